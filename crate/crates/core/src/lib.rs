//! Infinity norm of a complex polynomial over the closed unit disc.
//!
//! A point `z*` of the disc is a local maximum of `|p(z)|` if and only if
//! `z* = (p(z*)/p'(z*)) / |p(z*)/p'(z*)|`. The crate turns that identity
//! into a certificate ([`stationarity::certify`]), into two iterations
//! (the map itself and a Pseudo-Newton method on the pseudo-polynomial
//! `G(z) = p(z)|p'(z)| - z p'(z)|p(z)|`), and into a solver for `‖p‖∞`
//! ([`norm::compute_norm`]) backed by a refined boundary scan.
//!
//! ```
//! use polymax::{parse_polynomial, PolyFormat, norm::{compute_norm, NormOptions}};
//!
//! let p = parse_polynomial("z^3 - 1", PolyFormat::Expression).unwrap();
//! let report = compute_norm(&p, &NormOptions::default()).unwrap();
//! assert!((report.norm_value - 2.0).abs() < 1e-9);
//! ```

pub mod basins;
pub mod cli;
pub mod geometry;
pub mod norm;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod stationarity;

pub use num_complex::Complex64;
pub use parse::{parse_complex, parse_polynomial, ParseError, PolyFormat};
pub use poly::{PolyError, Polynomial};
