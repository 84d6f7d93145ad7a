//! The fixed-point characterization of local maxima of `|p|` on the unit disc.
//!
//! A point `z*` of the closed unit disc is a local maximum of `|p|` exactly
//! when `z* = F(z*)`, where `F(z) = (p/p')/|p/p'|`. Everything here is built
//! around that identity: the map itself, its residual, the pseudo-polynomial
//! `G(z) = p(z)|p'(z)| - z p'(z)|p(z)|` whose zeros include the fixed points,
//! and Newton-type steps on the frozen-modulus version of `G`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::Polynomial;

/// Relative factor for the singularity tests in this module.
pub const SINGULAR_TOL_FACTOR: f64 = 1e-14;
pub const DEFAULT_CERTIFY_TOL: f64 = 1e-8;
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum Singular {
    #[error("p(z) vanishes")]
    PZero,
    #[error("p'(z) vanishes")]
    PPrimeZero,
    #[error("step denominator vanishes")]
    DerivativeZero,
    #[error("iterate is not finite")]
    NonFinite,
}

impl Singular {
    pub fn as_str(&self) -> &'static str {
        match self {
            Singular::PZero => "p_zero",
            Singular::PPrimeZero => "p_prime_zero",
            Singular::DerivativeZero => "derivative_zero",
            Singular::NonFinite => "non_finite",
        }
    }
}

/// Order of the Basic Family member used to solve `G_k(z) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyOrder {
    /// Newton (the Pseudo-Newton step).
    Two,
    /// Halley.
    Three,
}

impl FamilyOrder {
    pub fn from_order(m: usize) -> Option<Self> {
        match m {
            2 => Some(FamilyOrder::Two),
            3 => Some(FamilyOrder::Three),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityCertificate {
    pub point: Complex64,
    /// `|z - F(z)|`, `+∞` where `F` is undefined.
    pub residual: f64,
    pub modulus: f64,
    /// `|p(z)/p'(z)|`, `+∞` where `p'` vanishes.
    pub newton_ratio: f64,
    pub boundary_gap: f64,
    pub accepted: bool,
}

impl fmt::Display for StationarityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:+.12}{:+.12}i: residual {:.3e}, |p| {:.15}, |p/p'| {:.6}",
            if self.accepted { "accepted" } else { "rejected" },
            self.point.re,
            self.point.im,
            self.residual,
            self.modulus,
            self.newton_ratio
        )
    }
}

pub fn singular_tolerance(p: &Polynomial) -> f64 {
    SINGULAR_TOL_FACTOR * (1.0 + p.scale())
}

/// `p(z)/p'(z)`, the negated Newton step.
pub fn newton_ratio(p: &Polynomial, z: Complex64) -> Result<Complex64, Singular> {
    let d = p.eval_derivatives_padded(z, 1);
    if d[1].norm() <= singular_tolerance(p) {
        return Err(Singular::PPrimeZero);
    }
    Ok(d[0] / d[1])
}

/// `F(z) = (p/p')/|p/p'|`, a unit-modulus complex number.
pub fn fixed_point_map(p: &Polynomial, z: Complex64) -> Result<Complex64, Singular> {
    let d = p.eval_derivatives_padded(z, 1);
    let tol = singular_tolerance(p);
    if d[0].norm() <= tol {
        return Err(Singular::PZero);
    }
    if d[1].norm() <= tol {
        return Err(Singular::PPrimeZero);
    }
    let ratio = d[0] / d[1];
    Ok(ratio / ratio.norm())
}

/// `|z - F(z)|`: zero exactly at local maxima over the disc.
pub fn residual(p: &Polynomial, z: Complex64) -> Result<f64, Singular> {
    Ok((z - fixed_point_map(p, z)?).norm())
}

/// The pseudo-polynomial `G(z) = p(z)|p'(z)| - z p'(z)|p(z)|`.
pub fn pseudo_polynomial(p: &Polynomial, z: Complex64) -> Complex64 {
    let d = p.eval_derivatives_padded(z, 1);
    d[0] * d[1].norm() - z * d[1] * d[0].norm()
}

/// `G_k` and its first two derivatives at `zk`, with `|p'(zk)|` and `|p(zk)|`
/// frozen as constants:
///
/// `G_k   = p c1 - z p' c2`
/// `G_k'  = p' c1 - (p' + z p'') c2`
/// `G_k'' = p'' c1 - (2p'' + z p''') c2`
fn frozen_pseudo_polynomial(p: &Polynomial, zk: Complex64) -> [Complex64; 3] {
    let d = p.eval_derivatives_padded(zk, 3);
    let c1 = d[1].norm();
    let c2 = d[0].norm();
    [
        d[0] * c1 - zk * d[1] * c2,
        d[1] * c1 - (d[1] + zk * d[2]) * c2,
        d[2] * c1 - (d[2] * 2.0 + zk * d[3]) * c2,
    ]
}

/// One Newton step on the frozen-modulus equation `G_k(z) = 0`.
pub fn pseudo_newton_step(p: &Polynomial, zk: Complex64) -> Result<Complex64, Singular> {
    basic_family_step(p, zk, FamilyOrder::Two)
}

/// Basic Family step of order 2 (Newton) or 3 (Halley) applied to `G_k`.
pub fn basic_family_step(p: &Polynomial, zk: Complex64, order: FamilyOrder) -> Result<Complex64, Singular> {
    let [g, g1, g2] = frozen_pseudo_polynomial(p, zk);
    let tol = singular_tolerance(p);
    let (num, den) = match order {
        FamilyOrder::Two => (g, g1),
        FamilyOrder::Three => (g * g1 * 2.0, g1 * g1 * 2.0 - g * g2),
    };
    if den.norm() <= tol {
        return Err(Singular::DerivativeZero);
    }
    let next = zk - num / den;
    if next.re.is_finite() && next.im.is_finite() {
        Ok(next)
    } else {
        Err(Singular::NonFinite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyTolerances {
    pub residual: f64,
    pub boundary: f64,
}

impl Default for CertifyTolerances {
    fn default() -> Self {
        Self {
            residual: DEFAULT_CERTIFY_TOL,
            boundary: DEFAULT_BOUNDARY_TOL,
        }
    }
}

pub fn certify(p: &Polynomial, z: Complex64, tol: f64) -> StationarityCertificate {
    certify_with(
        p,
        z,
        CertifyTolerances {
            residual: tol,
            ..CertifyTolerances::default()
        },
    )
}

/// Evidence for or against `z` being a local maximum of `|p|` over the disc.
/// Undefined `F` yields a rejected certificate with infinite residual.
pub fn certify_with(p: &Polynomial, z: Complex64, tol: CertifyTolerances) -> StationarityCertificate {
    let d = p.eval_derivatives_padded(z, 1);
    let residual = residual(p, z).unwrap_or(f64::INFINITY);
    let newton_ratio = if d[1].norm() <= singular_tolerance(p) {
        f64::INFINITY
    } else {
        (d[0] / d[1]).norm()
    };
    let boundary_gap = (z.norm() - 1.0).abs();
    StationarityCertificate {
        point: z,
        residual,
        modulus: d[0].norm(),
        newton_ratio,
        boundary_gap,
        accepted: residual <= tol.residual && boundary_gap <= tol.boundary,
    }
}
