//! Ascent and descent directions of `|p(z)|` at a point.
//!
//! At `z0` with `p(z0) != 0`, let `k` be the smallest order with
//! `p^(k)(z0) != 0` and write `conj(p(z0)) * p^(k)(z0) = r e^{iα}`. Then
//! `|p(z0 + t e^{iθ})|² = |p(z0)|² + 2 r cos(kθ + α) t^k / k! + O(t^{k+1})`,
//! so the direction `e^{iθ}` ascends exactly when `kθ + α`, reduced mod 2π,
//! lies in `(-π/2, π/2)`. The circle of directions splits into `k` ascent
//! and `k` descent sectors, each `π/k` wide. At a root every direction
//! ascends.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial};

/// Relative factor for the value/derivative zero tests.
pub const ZERO_TOL_FACTOR: f64 = 1e-12;
/// Half-width of the band around a sector edge reported as `Boundary`,
/// measured on the reduced angle `kθ + α`.
pub const BOUNDARY_MARGIN: f64 = 1e-9;
pub const DEFAULT_ORACLE_STEPS: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("all derivatives up to order {degree} vanish within tolerance {tolerance:e}")]
    AllDerivativesVanish { degree: usize, tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusCone {
    /// Smallest order with a nonvanishing derivative.
    pub k: usize,
    /// Argument of `conj(p(z0)) p^(k)(z0)` in `[-π, π)`.
    pub alpha: f64,
    /// Modulus of `conj(p(z0)) p^(k)(z0)`.
    pub magnitude: f64,
    pub at_root: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionClass {
    Ascent,
    Descent,
    Boundary,
    AscentEverywhere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampledDirection {
    Ascent,
    Descent,
    Inconclusive,
}

/// An open arc of directions `(start, start + width)`, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub start: f64,
    pub width: f64,
}

pub fn zero_tolerance(p: &Polynomial) -> f64 {
    ZERO_TOL_FACTOR * (1.0 + p.scale())
}

/// Reduces an angle into `[-π, π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = (x + PI).rem_euclid(TAU) - PI;
    // rem_euclid can round up to exactly TAU
    if r >= PI {
        r - TAU
    } else {
        r
    }
}

pub fn compute_cone(p: &Polynomial, z0: Complex64) -> Result<ModulusCone, GeometryError> {
    let degree = p.nonconstant_degree()?;
    let tol = zero_tolerance(p);
    let derivs = p.eval_derivatives(z0, degree)?;
    let value = derivs[0];
    let k = (1..=degree)
        .find(|&j| derivs[j].norm() > tol)
        .ok_or(GeometryError::AllDerivativesVanish {
            degree,
            tolerance: tol,
        })?;
    let product = value.conj() * derivs[k];
    Ok(ModulusCone {
        k,
        alpha: wrap_angle(product.im.atan2(product.re)),
        magnitude: product.norm(),
        at_root: value.norm() <= tol,
    })
}

impl ModulusCone {
    /// Classification of direction `e^{iθ}` from the sector formula.
    pub fn classify(&self, theta: f64) -> DirectionClass {
        if self.at_root {
            return DirectionClass::AscentEverywhere;
        }
        let phase = wrap_angle(self.k as f64 * theta + self.alpha);
        let edge_distance = (phase.abs() - FRAC_PI_2).abs();
        if edge_distance <= BOUNDARY_MARGIN {
            DirectionClass::Boundary
        } else if phase.abs() < FRAC_PI_2 {
            DirectionClass::Ascent
        } else {
            DirectionClass::Descent
        }
    }

    /// The `k` ascent sectors, starts reduced into `[0, 2π)` and sorted.
    /// Sector `N` spans `((2Nπ - α)/k - π/(2k), (2Nπ - α)/k + π/(2k))`.
    pub fn ascent_sectors(&self) -> Vec<Sector> {
        self.sectors(0.0)
    }

    /// The `k` descent sectors, interleaved with the ascent ones.
    pub fn descent_sectors(&self) -> Vec<Sector> {
        self.sectors(PI)
    }

    fn sectors(&self, shift: f64) -> Vec<Sector> {
        if self.at_root {
            return Vec::new();
        }
        let k = self.k as f64;
        let width = PI / k;
        let mut out: Vec<Sector> = (0..self.k)
            .map(|n| {
                let center = (TAU * n as f64 + shift - self.alpha) / k;
                Sector {
                    start: (center - width / 2.0).rem_euclid(TAU),
                    width,
                }
            })
            .collect();
        out.sort_by(|a, b| a.start.total_cmp(&b.start));
        out
    }

    /// Angular distance (in θ) from `theta` to the nearest sector edge.
    pub fn edge_distance(&self, theta: f64) -> f64 {
        let phase = wrap_angle(self.k as f64 * theta + self.alpha);
        (phase.abs() - FRAC_PI_2).abs() / self.k as f64
    }
}

pub fn classify_direction(
    p: &Polynomial,
    z0: Complex64,
    theta: f64,
) -> Result<DirectionClass, GeometryError> {
    Ok(compute_cone(p, z0)?.classify(theta))
}

/// Compares `|p(z0 + t e^{iθ})|` against `|p(z0)|` at each step `t`.
/// Unanimous increase is `Ascent`, unanimous decrease is `Descent`.
/// Empty or non-positive step lists are `Inconclusive`.
pub fn sampled_direction_oracle(
    p: &Polynomial,
    z0: Complex64,
    theta: f64,
    steps: &[f64],
) -> SampledDirection {
    if steps.is_empty() || steps.iter().any(|&t| t.is_nan() || t <= 0.0) {
        return SampledDirection::Inconclusive;
    }
    let base = p.eval(z0).norm();
    let direction = Complex64::from_polar(1.0, theta);
    let moduli: Vec<f64> = steps.iter().map(|&t| p.eval(z0 + direction * t).norm()).collect();
    if moduli.iter().all(|&m| m > base) {
        SampledDirection::Ascent
    } else if moduli.iter().all(|&m| m < base) {
        SampledDirection::Descent
    } else {
        SampledDirection::Inconclusive
    }
}
