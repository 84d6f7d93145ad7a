//! Sampling `q(t) = |p(e^{it})|` on the unit circle.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::poly::Polynomial;
use crate::stationarity::{certify_with, CertifyTolerances, StationarityCertificate};

pub const MIN_SCAN_SAMPLES: usize = 8;
pub const MIN_ORACLE_SAMPLES: usize = 1024;
pub const REFINE_WIDTH: f64 = 1e-12;
/// Relative spread below which a scan is treated as flat.
pub const FLAT_TOL: f64 = 1e-12;
/// Half-width of the window searched for the exact stationary angle after
/// golden-section refinement.
const POLISH_WINDOW: f64 = 1e-6;

/// Golden-section search for a maximum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `width`. Returns `(x, f(x))`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if b - a <= width {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Uniform samples `q(2πj/n)`, `j = 0..n`.
pub fn sample_boundary(p: &Polynomial, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|j| p.boundary_modulus(TAU * j as f64 / samples as f64))
        .collect()
}

pub fn boundary_scan(p: &Polynomial, samples: usize) -> Vec<StationarityCertificate> {
    boundary_scan_with(p, samples, CertifyTolerances::default())
}

/// Certificates for every local maximum of the sampled `q`, refined first.
///
/// A sample is a local maximum when it beats its left neighbour and is not
/// beaten by its right one (circularly), so a two-sample plateau is reported
/// once. A flat scan returns the single point `t = 0`.
pub fn boundary_scan_with(p: &Polynomial, samples: usize, tol: CertifyTolerances) -> Vec<StationarityCertificate> {
    let n = samples.max(MIN_SCAN_SAMPLES);
    let q = sample_boundary(p, n);
    let (lo, hi) = q.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi - lo <= FLAT_TOL * (1.0 + hi) {
        return vec![certify_with(p, Complex64::new(1.0, 0.0), tol)];
    }
    let h = TAU / n as f64;
    (0..n)
        .filter(|&j| {
            let left = q[(j + n - 1) % n];
            let right = q[(j + 1) % n];
            q[j] > left && q[j] >= right
        })
        .map(|j| {
            let t = refine_local_max(p, h * (j as f64 - 1.0), h * (j as f64 + 1.0));
            certify_with(p, Complex64::from_polar(1.0, t), tol)
        })
        .collect()
}

/// Golden-section refinement on `[a, b]`, then bisection on the sign of
/// `Im(conj(p) p' z)` (proportional to `-dq²/dt`) to pin the stationary
/// angle to working precision. Golden section alone stalls near `1e-8`
/// because `q` is flat at its maximum.
pub fn refine_local_max(p: &Polynomial, a: f64, b: f64) -> f64 {
    let (t, _) = golden_section_max(|t| p.boundary_modulus(t), a, b, REFINE_WIDTH);
    polish_stationary_angle(p, t).unwrap_or(t).rem_euclid(TAU)
}

fn circle_slope(p: &Polynomial, t: f64) -> f64 {
    let z = Complex64::from_polar(1.0, t);
    let d = p.eval_derivatives_padded(z, 1);
    (d[0].conj() * d[1] * z).im
}

fn polish_stationary_angle(p: &Polynomial, t: f64) -> Option<f64> {
    let (mut lo, mut hi) = (t - POLISH_WINDOW, t + POLISH_WINDOW);
    if !(circle_slope(p, lo) < 0.0 && circle_slope(p, hi) > 0.0) {
        return None;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = circle_slope(p, mid);
        if s == 0.0 {
            return Some(mid);
        }
        if s < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Brute-force `max q(t)`: a uniform grid plus golden-section refinement
/// around the best sample. Reference value for tests.
pub fn dense_scan_oracle(p: &Polynomial, samples: usize) -> f64 {
    let n = samples.max(MIN_ORACLE_SAMPLES);
    let h = TAU / n as f64;
    let (best_j, best_q) = (0..n)
        .map(|j| (j, p.boundary_modulus(h * j as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
    let (_, refined) = golden_section_max(
        |t| p.boundary_modulus(t),
        h * (best_j as f64 - 1.0),
        h * (best_j as f64 + 1.0),
        REFINE_WIDTH,
    );
    refined.max(best_q)
}
