//! Simultaneous root finding (Durand–Kerner / Weierstrass iteration).

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial};

pub const MAX_ITERATIONS: usize = 500;
pub const UPDATE_TOL: f64 = 1e-13;
pub const CLUSTER_TOL: f64 = 1e-6;
pub const ACCEPT_TOL_FACTOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub location: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// `max |p(root)|` over the set.
    pub residual_bound: f64,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn locations(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|r| r.location)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("root iteration did not converge (residual bound {:e})", best.residual_bound)]
    NoConvergence { best: RootSet },
}

impl RootError {
    /// The best available root set, if the failure was a convergence one.
    pub fn best(&self) -> Option<&RootSet> {
        match self {
            RootError::NoConvergence { best } => Some(best),
            RootError::Poly(_) => None,
        }
    }
}

pub fn acceptance_tolerance(p: &Polynomial) -> f64 {
    ACCEPT_TOL_FACTOR * (1.0 + p.scale())
}

pub fn find_roots(p: &Polynomial) -> Result<RootSet, RootError> {
    let degree = p.nonconstant_degree()?;
    let lead = p.leading();
    let monic = Polynomial::new(p.coeffs().iter().map(|&c| c / lead).collect())?;

    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (1..=degree as i32).map(|j| seed.powi(j)).collect();
    for _ in 0..MAX_ITERATIONS {
        let mut largest_update: f64 = 0.0;
        for i in 0..degree {
            let denom = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (z[i] - zj));
            if denom.norm() == 0.0 {
                continue;
            }
            let update = monic.eval(z[i]) / denom;
            if update.re.is_finite() && update.im.is_finite() {
                z[i] -= update;
                largest_update = largest_update.max(update.norm());
            }
        }
        if largest_update < UPDATE_TOL {
            break;
        }
    }

    let set = cluster(p, &z);
    if set.residual_bound <= acceptance_tolerance(p) {
        Ok(set)
    } else {
        Err(RootError::NoConvergence { best: set })
    }
}

/// Roots of `p'`.
pub fn critical_points(p: &Polynomial) -> Result<RootSet, RootError> {
    let degree = p.nonconstant_degree()?;
    if degree < 2 {
        return Err(PolyError::Constant {
            degree: Some(degree - 1),
        }
        .into());
    }
    find_roots(&p.derivative())
}

/// Merges approximations closer than [`CLUSTER_TOL`] into one root whose
/// multiplicity is the cluster size, located at the cluster mean. Output is
/// ordered by argument in `[0, 2π)`, then modulus.
fn cluster(p: &Polynomial, approximations: &[Complex64]) -> RootSet {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in approximations {
        match groups
            .iter_mut()
            .find(|g| g.iter().any(|&w| (w - z).norm() < CLUSTER_TOL))
        {
            Some(group) => group.push(z),
            None => groups.push(vec![z]),
        }
    }
    let mut roots: Vec<Root> = groups
        .into_iter()
        .map(|g| Root {
            location: g.iter().sum::<Complex64>() / g.len() as f64,
            multiplicity: g.len(),
        })
        .collect();
    roots.sort_by(|a, b| {
        let key = |r: &Root| {
            let arg = r.location.im.atan2(r.location.re).rem_euclid(TAU);
            // a tiny negative imaginary part should not send a real root to the end
            (if arg > TAU - 1e-9 { 0.0 } else { arg }, r.location.norm())
        };
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let residual_bound = roots
        .iter()
        .map(|r| p.eval(r.location).norm())
        .fold(0.0, f64::max);
    RootSet { roots, residual_bound }
}
