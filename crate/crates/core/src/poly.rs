//! Dense univariate complex polynomials.
//!
//! Coefficients are stored in ascending order (`coeffs[j]` multiplies `z^j`),
//! which keeps Horner evaluation and differentiation index arithmetic uniform.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Trailing coefficients below this modulus are dropped when computing the degree.
pub const TRIM_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("derivative order {order} exceeds degree {degree}")]
    OrderOutOfRange { order: usize, degree: usize },
    #[error("polynomial must be nonconstant (degree {})", degree.map_or("-inf".to_string(), |d| d.to_string()))]
    Constant { degree: Option<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// leading terms. An empty list yields the zero polynomial.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(PolyError::NonFinite { index });
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() < TRIM_THRESHOLD) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `z^n - 1`, the running example family.
    pub fn unity_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = Complex64::new(-1.0, 0.0);
        coeffs[n] += Complex64::new(1.0, 0.0);
        Self::new(coeffs).expect("finite coefficients")
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the identically zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() < TRIM_THRESHOLD
    }

    /// Degree of a nonconstant polynomial, or an error for constants.
    pub fn nonconstant_degree(&self) -> Result<usize, PolyError> {
        match self.degree() {
            Some(d) if d >= 1 => Ok(d),
            degree => Err(PolyError::Constant { degree }),
        }
    }

    /// Largest coefficient modulus; the reference scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("nonempty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * j as f64)
            .collect();
        Polynomial::new(coeffs).expect("derivative of finite coefficients is finite")
    }

    /// Returns `[p(z), p'(z), ..., p^(m)(z)]` via repeated synthetic division
    /// (Taylor coefficients at `z` scaled by `k!`).
    pub fn eval_derivatives(&self, z: Complex64, m: usize) -> Result<Vec<Complex64>, PolyError> {
        let degree = self.degree().unwrap_or(0);
        if m > degree {
            return Err(PolyError::OrderOutOfRange { order: m, degree });
        }
        let mut work = self.coeffs.clone();
        let n = work.len() - 1;
        let mut out = Vec::with_capacity(m + 1);
        let mut factorial = 1.0;
        for k in 0..=m {
            for i in (k..n).rev() {
                let carry = work[i + 1] * z;
                work[i] += carry;
            }
            if k > 0 {
                factorial *= k as f64;
            }
            out.push(work[k] * factorial);
        }
        Ok(out)
    }

    /// Like [`eval_derivatives`](Self::eval_derivatives) but always returns
    /// `m + 1` values, padding orders above the degree with zero.
    pub fn eval_derivatives_padded(&self, z: Complex64, m: usize) -> Vec<Complex64> {
        let top = m.min(self.degree().unwrap_or(0));
        let mut out = self.eval_derivatives(z, top).expect("order clamped to degree");
        out.resize(m + 1, Complex64::new(0.0, 0.0));
        out
    }

    /// `q(t) = |p(e^{it})|`, with `t` reduced into `[0, 2π)` first.
    pub fn boundary_modulus(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        self.eval(Complex64::from_polar(1.0, t)).norm()
    }
}

/// Formats a real so that `str::parse::<f64>` recovers it exactly.
pub(crate) fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Canonical coefficient text: `(a+bi)`, `a`, or `bi`, plus whether the
/// leading sign was pulled out (for real or imaginary-only values).
fn format_coefficient(c: Complex64, implicit_one: bool) -> (bool, String) {
    match (c.re != 0.0, c.im != 0.0) {
        (true, true) => {
            let sign = if c.im < 0.0 { '-' } else { '+' };
            (false, format!("({}{}{}i)", format_real(c.re), sign, format_real(c.im.abs())))
        }
        (false, true) => {
            let body = if c.im.abs() == 1.0 {
                "i".to_string()
            } else {
                format!("{}i", format_real(c.im.abs()))
            };
            (c.im < 0.0, body)
        }
        _ => {
            let body = if implicit_one && c.re.abs() == 1.0 {
                String::new()
            } else {
                format_real(c.re.abs())
            };
            (c.re < 0.0, body)
        }
    }
}

impl fmt::Display for Polynomial {
    /// Renders in the expression grammar accepted by
    /// [`parse_polynomial`](crate::parse::parse_polynomial); round-trips exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let (negative, coef) = format_coefficient(c, k > 0);
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{coef}{monomial}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
