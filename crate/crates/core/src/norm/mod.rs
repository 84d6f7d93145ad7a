//! Computing `‖p‖∞` over the closed unit disc.
//!
//! The maximum sits on the unit circle, where every local maximum over the
//! disc is a fixed point of `F`. The solver seeds an iteration next to the
//! roots of `p` and on the circle, projects converged points onto the
//! circle, certifies them, and (for [`NormMethod::Hybrid`]) merges the result
//! with the refined boundary scan so the answer never rests on seeding alone.

mod orbit;
mod scan;

pub use orbit::{
    fixed_point_orbit, orbit_endpoint, pseudo_newton_orbit, run_orbit, Iteration, OrbitOutcome, OrbitTrace,
    CONFIRM_STEPS, STEP_TOL,
};
pub use scan::{
    boundary_scan, boundary_scan_with, dense_scan_oracle, golden_section_max, refine_local_max, sample_boundary,
    FLAT_TOL, MIN_ORACLE_SAMPLES, MIN_SCAN_SAMPLES, REFINE_WIDTH,
};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial};
use crate::roots::find_roots;
use crate::stationarity::{certify_with, CertifyTolerances, StationarityCertificate};

pub const DEFAULT_RNG_SEED: u64 = 42;
pub const ROOT_OFFSET: f64 = 1e-2;
pub const DEDUPE_TOL: f64 = 1e-6;
/// Slack on the `|p/p'| >= 1/n` test.
pub const BERNSTEIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormMethod {
    FixedPoint,
    PseudoNewton,
    BasicFamily3,
    BoundaryScan,
    /// Pseudo-Newton from root and circle seeds, merged with the boundary scan.
    Hybrid,
}

impl NormMethod {
    pub fn iteration(self) -> Option<Iteration> {
        match self {
            NormMethod::FixedPoint => Some(Iteration::FixedPoint),
            NormMethod::PseudoNewton | NormMethod::Hybrid => Some(Iteration::PseudoNewton),
            NormMethod::BasicFamily3 => Some(Iteration::BasicFamily3),
            NormMethod::BoundaryScan => None,
        }
    }

    pub fn uses_scan(self) -> bool {
        matches!(self, NormMethod::BoundaryScan | NormMethod::Hybrid)
    }

    pub fn name(self) -> &'static str {
        match self {
            NormMethod::FixedPoint => "f-iter",
            NormMethod::PseudoNewton => "pseudo-newton",
            NormMethod::BasicFamily3 => "basic-family3",
            NormMethod::BoundaryScan => "scan",
            NormMethod::Hybrid => "hybrid",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormOptions {
    pub method: NormMethod,
    pub rng_seed: u64,
    pub root_offset: f64,
    /// Defaults to `max(256, 32 * degree)`.
    pub scan_samples: Option<usize>,
    /// Defaults to [`Iteration::default_max_iter`].
    pub max_iter: Option<usize>,
    pub tolerances: CertifyTolerances,
    pub dedupe_tol: f64,
    /// Run in addition to the generated seeds.
    pub extra_seeds: Vec<Complex64>,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            method: NormMethod::Hybrid,
            rng_seed: DEFAULT_RNG_SEED,
            root_offset: ROOT_OFFSET,
            scan_samples: None,
            max_iter: None,
            tolerances: CertifyTolerances::default(),
            dedupe_tol: DEDUPE_TOL,
            extra_seeds: Vec::new(),
        }
    }
}

impl NormOptions {
    pub fn with_method(method: NormMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub best_point: Complex64,
    pub norm_value: f64,
    /// Accepted certificates, one per distinct maximizer, ordered by argument.
    pub candidates: Vec<StationarityCertificate>,
    pub method: NormMethod,
    pub seeds_used: usize,
    pub bernstein_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no certified candidates (largest sampled |p| on the circle: {flat_value})")]
    NoCandidates { flat_value: f64 },
}

pub fn default_scan_samples(degree: usize) -> usize {
    (32 * degree).max(256)
}

/// Seeds for the iteration: for each root `r` of `p`, one point displaced
/// outward by `root_offset` and four at jittered angles around it, followed
/// by `max(8, 4n)` equally spaced points on the unit circle and any extra
/// seeds from the options.
pub fn seed_points(p: &Polynomial, options: &NormOptions) -> Result<Vec<Complex64>, PolyError> {
    let degree = p.nonconstant_degree()?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.rng_seed);
    let roots = match find_roots(p) {
        Ok(set) => Some(set),
        Err(err) => err.best().cloned(),
    };
    let delta = options.root_offset;
    let mut seeds = Vec::new();
    for r in roots.iter().flat_map(|set| set.locations()) {
        let outward = if r.norm() > 0.0 { r / r.norm() } else { Complex64::new(1.0, 0.0) };
        seeds.push(r + outward * delta);
        let base = outward.im.atan2(outward.re);
        for j in 0..4 {
            let jitter = rng.gen_range(-PI / 8.0..PI / 8.0);
            let angle = base + FRAC_PI_4 + j as f64 * FRAC_PI_2 + jitter;
            seeds.push(r + Complex64::from_polar(delta, angle));
        }
    }
    let m = (4 * degree).max(8);
    seeds.extend((0..m).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64)));
    seeds.extend(options.extra_seeds.iter().copied());
    Ok(seeds)
}

pub fn compute_norm(p: &Polynomial, options: &NormOptions) -> Result<NormReport, NormError> {
    let degree = p.nonconstant_degree()?;
    let mut accepted: Vec<StationarityCertificate> = Vec::new();
    let mut seeds_used = 0;

    if let Some(iteration) = options.method.iteration() {
        let seeds = seed_points(p, options)?;
        seeds_used = seeds.len();
        let max_iter = options.max_iter.unwrap_or_else(|| iteration.default_max_iter());
        let found: Vec<Option<StationarityCertificate>> = seeds
            .par_iter()
            .map(|&seed| {
                let (outcome, _) = orbit_endpoint(p, iteration, seed, max_iter);
                let z = outcome.attractor()?;
                let z = if z.norm() > 0.0 { z / z.norm() } else { z };
                Some(certify_with(p, z, options.tolerances)).filter(|c| c.accepted)
            })
            .collect();
        accepted.extend(found.into_iter().flatten());
    }

    let samples = options.scan_samples.unwrap_or_else(|| default_scan_samples(degree));
    if options.method.uses_scan() {
        accepted.extend(
            boundary_scan_with(p, samples, options.tolerances)
                .into_iter()
                .filter(|c| c.accepted),
        );
    }

    let Some(best) = accepted
        .iter()
        .copied()
        .reduce(|a, b| if b.modulus > a.modulus { b } else { a })
    else {
        let flat_value = sample_boundary(p, samples).into_iter().fold(0.0, f64::max);
        return Err(NormError::NoCandidates { flat_value });
    };

    let candidates = dedupe(accepted, best, options.dedupe_tol);
    let ratio = best.newton_ratio;
    Ok(NormReport {
        best_point: best.point,
        norm_value: best.modulus,
        candidates,
        method: options.method,
        seeds_used,
        bernstein_ok: bernstein_ratio_ok(ratio, degree),
    })
}

/// Groups candidates closer than `tol`. Each group is represented by its
/// smallest-residual member, except the group holding the overall best point,
/// which keeps that point so the report's maximum is always listed.
fn dedupe(
    candidates: Vec<StationarityCertificate>,
    best: StationarityCertificate,
    tol: f64,
) -> Vec<StationarityCertificate> {
    let mut reps: Vec<StationarityCertificate> = Vec::new();
    for cand in candidates {
        match reps.iter_mut().find(|r| (r.point - cand.point).norm() < tol) {
            Some(rep) => {
                let rep_is_best = *rep == best;
                if cand == best || (!rep_is_best && cand.residual < rep.residual) {
                    *rep = cand;
                }
            }
            None => reps.push(cand),
        }
    }
    reps.sort_by(|a, b| {
        let arg = |c: &StationarityCertificate| c.point.im.atan2(c.point.re).rem_euclid(TAU);
        arg(a).total_cmp(&arg(b))
    });
    reps
}

fn bernstein_ratio_ok(ratio: f64, degree: usize) -> bool {
    ratio >= 1.0 / degree as f64 - BERNSTEIN_SLACK
}

/// `|p(z*)/p'(z*)| >= 1/n` at the reported maximizer, which Bernstein's
/// inequality `‖p'‖∞ <= n‖p‖∞` forces at any global maximizer.
pub fn bernstein_check(p: &Polynomial, report: &NormReport) -> bool {
    let Ok(degree) = p.nonconstant_degree() else {
        return false;
    };
    let d = p.eval_derivatives_padded(report.best_point, 1);
    if d[1].norm() == 0.0 {
        return true;
    }
    bernstein_ratio_ok((d[0] / d[1]).norm(), degree)
}
