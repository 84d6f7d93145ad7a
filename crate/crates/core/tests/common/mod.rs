#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use polymax::geometry::{DirectionClass, ModulusCone};
use polymax::{Complex64, Polynomial};
use proptest::prelude::*;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Polynomial of exactly `degree` with coefficients uniform in `[lo, hi]²`.
pub fn random_poly(rng: &mut impl Rng, degree: usize, lo: f64, hi: f64) -> Polynomial {
    loop {
        let coeffs: Vec<Complex64> = (0..=degree)
            .map(|_| c(rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)))
            .collect();
        if coeffs[degree].norm() > 1e-3 {
            return Polynomial::new(coeffs).unwrap();
        }
    }
}

/// Random polynomial with real coefficients in `[-1, 1]`.
pub fn random_real_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    loop {
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if coeffs[degree].abs() > 1e-3 {
            return Polynomial::from_real(&coeffs).unwrap();
        }
    }
}

/// Uniform point in the closed disc of radius `r`.
pub fn random_in_disc(rng: &mut impl Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))
}

pub fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
}

/// Polynomials with degree in `lo..=hi`, coefficients in `[-1, 1]²`, and a
/// leading coefficient of modulus at least 0.1.
pub fn poly(lo: usize, hi: usize) -> impl Strategy<Value = Polynomial> {
    (prop::collection::vec(coeff(), lo..=hi), coeff()).prop_map(|(mut coeffs, lead)| {
        let lead = if lead.norm() < 0.1 { c(1.0, 0.0) } else { lead };
        coeffs.push(lead);
        Polynomial::new(coeffs).unwrap()
    })
}

pub fn point_in_box(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(re, im)| c(re, im))
}

/// Pixel whose sample point is nearest `z`, if inside the grid.
pub fn nearest_pixel(spec: &polymax::basins::GridSpec, z: Complex64) -> Option<(usize, usize)> {
    let s = spec.pixel_size();
    let col = ((z.re - (spec.center.re - spec.half_width)) / s - 0.5).round();
    let row = (((spec.center.im + spec.half_width) - z.im) / s - 0.5).round();
    if col < 0.0 || row < 0.0 || col >= spec.width_px as f64 || row >= spec.height_px as f64 {
        return None;
    }
    Some((col as usize, row as usize))
}

/// Index of the attractor nearest `z`.
pub fn nearest_index(points: &[Complex64], z: Complex64) -> usize {
    points
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - z).norm().total_cmp(&(b.1 - z).norm()))
        .map(|(k, _)| k)
        .unwrap()
}

/// Fraction of pixels whose label disagrees with the label at their image
/// under `map`, after relabeling attractors by the same map. Pixels mapped
/// outside the grid are skipped.
pub fn symmetry_mismatch(image: &polymax::basins::BasinImage, map: impl Fn(Complex64) -> Complex64) -> f64 {
    let relabel: Vec<usize> = image
        .attractors
        .iter()
        .map(|&a| nearest_index(&image.attractors, map(a)))
        .collect();
    let spec = image.spec;
    let (mut compared, mut mismatched) = (0usize, 0usize);
    for row in 0..spec.height_px {
        for col in 0..spec.width_px {
            let Some((c2, r2)) = nearest_pixel(&spec, map(spec.pixel_to_plane(col, row))) else {
                continue;
            };
            let here = image.label_at(col, row);
            let expected = if here < 0 { -1 } else { relabel[here as usize] as i32 };
            compared += 1;
            if image.label_at(c2, r2) != expected {
                mismatched += 1;
            }
        }
    }
    mismatched as f64 / compared.max(1) as f64
}

/// Bisects `[lo, hi]` for the switch point of `pred`, assuming `pred(lo)`
/// differs from `pred(hi)`.
pub fn bisect(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    let at_lo = pred(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Ascent and descent arcs found by scanning `classify` around the circle
/// and bisecting each class change. Edges are the midpoints of the thin
/// `Boundary` bands.
pub fn measured_arcs(cone: &ModulusCone) -> Vec<(DirectionClass, f64)> {
    let n = 720 * cone.k;
    let h = TAU / n as f64;
    let class = |t: f64| cone.classify(t);
    let mut edges = Vec::new();
    for j in 0..n {
        let (a, b) = (h * j as f64, h * (j + 1) as f64);
        if class(a) != class(b) {
            let asc = bisect(a, b, |t| class(t) == DirectionClass::Ascent);
            let desc = bisect(a, b, |t| class(t) == DirectionClass::Descent);
            edges.push(0.5 * (asc + desc));
        }
    }
    (0..edges.len())
        .map(|i| {
            let start = edges[i];
            let end = if i + 1 < edges.len() { edges[i + 1] } else { edges[0] + TAU };
            (class(0.5 * (start + end)), end - start)
        })
        .collect()
}

/// `p = c + (z - z0)^k q(z)` expanded into coefficients.
pub fn with_critical_order(z0: Complex64, k: usize, q: &Polynomial, constant: Complex64) -> Polynomial {
    let mut coeffs = q.coeffs().to_vec();
    for _ in 0..k {
        let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
        for (j, &a) in coeffs.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * z0;
        }
        coeffs = next;
    }
    coeffs[0] += constant;
    Polynomial::new(coeffs).unwrap()
}

