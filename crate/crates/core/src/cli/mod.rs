//! The `polymax` command-line interface.
//!
//! [`run`] parses arguments, dispatches to a subcommand and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or certificate accepted |
//! | 1 | certificate rejected |
//! | 2 | input error (usage, parse, constant polynomial, bad palette) |
//! | 3 | no candidates, or root iteration failed |
//! | 4 | I/O error |

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::basins::{self, default_palette, parse_palette, render_basins_with, write_ppm, GridSpec};
use crate::geometry::{compute_cone, DirectionClass};
use crate::norm::{compute_norm, run_orbit, Iteration, NormError, NormMethod, NormOptions, OrbitOutcome};
use crate::parse::{parse_complex, parse_polynomial, PolyFormat};
use crate::poly::Polynomial;
use crate::roots::{find_roots, RootError};
use crate::stationarity::{certify_with, CertifyTolerances, StationarityCertificate, DEFAULT_BOUNDARY_TOL, DEFAULT_CERTIFY_TOL};

mod text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_CANDIDATES: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Orbit listings keep at most this many iterates; `iterate_count` always
/// carries the full number.
pub const ORBIT_LISTING_CAP: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "polymax", version, about = "Maximum modulus of complex polynomials on the unit disc")]
struct Cli {
    /// Seed for randomized seeding of the norm solver.
    #[arg(long, global = true, env = "POLYMAX_SEED", default_value_t = crate::norm::DEFAULT_RNG_SEED)]
    rng_seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// Expression such as `z^3 - (1+2i)z + 0.5`.
    Expr,
    /// Comma-separated coefficients, constant term first.
    Coeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    FIter,
    PseudoNewton,
    BasicFamily3,
    Scan,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IterationArg {
    FIter,
    PseudoNewton,
    BasicFamily3,
}

impl From<IterationArg> for Iteration {
    fn from(arg: IterationArg) -> Self {
        match arg {
            IterationArg::FIter => Iteration::FixedPoint,
            IterationArg::PseudoNewton => Iteration::PseudoNewton,
            IterationArg::BasicFamily3 => Iteration::BasicFamily3,
        }
    }
}

impl From<MethodArg> for NormMethod {
    fn from(arg: MethodArg) -> Self {
        match arg {
            MethodArg::FIter => NormMethod::FixedPoint,
            MethodArg::PseudoNewton => NormMethod::PseudoNewton,
            MethodArg::BasicFamily3 => NormMethod::BasicFamily3,
            MethodArg::Scan => NormMethod::BoundaryScan,
            MethodArg::Hybrid => NormMethod::Hybrid,
        }
    }
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// The polynomial.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,

    #[arg(long, value_enum, default_value_t = InputFormat::Expr)]
    poly_format: InputFormat,
}

#[derive(Debug, Args)]
struct TolArgs {
    /// Residual tolerance for certification.
    #[arg(long, default_value_t = DEFAULT_CERTIFY_TOL)]
    tol: f64,

    /// Allowed distance of a certified point from the unit circle.
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_TOL)]
    boundary_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> CertifyTolerances {
        CertifyTolerances {
            residual: self.tol,
            boundary: self.boundary_tol,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the maximum of |p| on the closed unit disc.
    Norm {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Hybrid)]
        method: MethodArg,
        /// Boundary scan grid size (default: max(256, 32·degree)).
        #[arg(long)]
        samples: Option<usize>,
        /// Per-orbit iteration cap.
        #[arg(long)]
        max_iter: Option<usize>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Check whether a point is a local maximum of |p| over the disc.
    Certify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        tol: TolArgs,
        /// Include the ascent cone at the point.
        #[arg(long)]
        explain: bool,
    },
    /// Iterate one seed and report its orbit.
    Orbit {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        #[arg(long, value_enum, default_value_t = IterationArg::FIter)]
        method: IterationArg,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Render basins of attraction of the certified maxima to a PPM file.
    Basins {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value_t = IterationArg::FIter)]
        method: IterationArg,
        #[arg(long, default_value_t = basins::DEFAULT_SIZE)]
        size: usize,
        #[arg(long, default_value_t = basins::DEFAULT_HALF_WIDTH)]
        half_width: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Comma-separated hex colors, one per attractor.
        #[arg(long)]
        palette: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the roots of p with multiplicities.
    Roots {
        #[command(flatten)]
        poly: PolyArgs,
    },
}

/// Failure of a subcommand, already mapped to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

/// Runs the CLI with `args` (including the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let (value, code) = match &cli.command {
        Command::Norm {
            poly,
            method,
            samples,
            max_iter,
            tol,
        } => {
            let p = nonconstant(poly)?;
            let options = NormOptions {
                method: (*method).into(),
                rng_seed: cli.rng_seed,
                scan_samples: *samples,
                max_iter: *max_iter,
                tolerances: tol.tolerances(),
                ..NormOptions::default()
            };
            let report = compute_norm(&p, &options).map_err(|e| match e {
                NormError::NoCandidates { .. } => Failure {
                    code: EXIT_NO_CANDIDATES,
                    message: e.to_string(),
                },
                NormError::Poly(e) => Failure::input(e),
            })?;
            let json = NormJson {
                polynomial: p.to_string(),
                norm: report.norm_value,
                best_point: report.best_point.into(),
                candidates: report.candidates.iter().map(CertificateJson::from).collect(),
                method: report.method.name(),
                bernstein_ok: report.bernstein_ok,
                seeds_used: report.seeds_used,
                rng_seed: cli.rng_seed,
            };
            (Report::Norm(json), EXIT_OK)
        }
        Command::Certify {
            poly,
            point,
            tol,
            explain,
        } => {
            let p = polynomial(poly)?;
            let z = parse_complex(point).map_err(|e| Failure::input(format!("--point: {e}")))?;
            let cert = certify_with(&p, z, tol.tolerances());
            let explain = explain.then(|| explain_cone(&p, z));
            let code = if cert.accepted { EXIT_OK } else { EXIT_REJECTED };
            let json = CertifyJson {
                polynomial: p.to_string(),
                certificate: CertificateJson::from(&cert),
                explain,
            };
            (Report::Certify(json), code)
        }
        Command::Orbit {
            poly,
            seed,
            method,
            max_iter,
        } => {
            let p = nonconstant(poly)?;
            let seed = parse_complex(seed).map_err(|e| Failure::input(format!("--seed: {e}")))?;
            let iteration: Iteration = (*method).into();
            let cap = max_iter.unwrap_or_else(|| iteration.default_max_iter());
            let trace = run_orbit(&p, iteration, seed, cap);
            let json = OrbitJson {
                polynomial: p.to_string(),
                method: iteration.name(),
                seed: seed.into(),
                max_iter: cap,
                iterations: trace.iterations,
                iterate_count: trace.iterates.len(),
                iterates: trace.iterates.iter().take(ORBIT_LISTING_CAP).map(|&z| z.into()).collect(),
                outcome: OutcomeJson::from(trace.outcome),
            };
            (Report::Orbit(json), EXIT_OK)
        }
        Command::Basins {
            poly,
            method,
            size,
            half_width,
            center,
            max_iter,
            palette,
            out: path,
        } => {
            let p = nonconstant(poly)?;
            if *size == 0 {
                return Err(Failure::input("--size must be positive"));
            }
            if !(half_width.is_finite() && *half_width > 0.0) {
                return Err(Failure::input("--half-width must be positive"));
            }
            let center = parse_complex(center).map_err(|e| Failure::input(format!("--center: {e}")))?;
            let iteration: Iteration = (*method).into();
            let cap = max_iter.unwrap_or_else(|| basins::default_max_iter(iteration));
            let options = NormOptions {
                rng_seed: cli.rng_seed,
                ..NormOptions::default()
            };
            let attractors: Vec<Complex64> = match compute_norm(&p, &options) {
                Ok(report) => report.candidates.iter().map(|c| c.point).collect(),
                Err(NormError::NoCandidates { .. }) => Vec::new(),
                Err(NormError::Poly(e)) => return Err(Failure::input(e)),
            };
            let colors = match palette {
                Some(text) => parse_palette(text).map_err(Failure::input)?,
                None => default_palette(attractors.len()),
            };
            let spec = GridSpec {
                center,
                half_width: *half_width,
                width_px: *size,
                height_px: *size,
            };
            let image = render_basins_with(&p, iteration, spec, cap, attractors);
            let bytes = write_ppm(&image, &colors).map_err(Failure::input)?;
            std::fs::write(path, bytes).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            let (pixel_counts, unlabelled) = image.label_counts();
            let json = BasinsJson {
                polynomial: p.to_string(),
                method: iteration.name(),
                width: spec.width_px,
                height: spec.height_px,
                max_iter: cap,
                attractors: image.attractors.iter().map(|&z| z.into()).collect(),
                pixel_counts,
                unlabelled,
                out: path.display().to_string(),
                rng_seed: cli.rng_seed,
            };
            (Report::Basins(json), EXIT_OK)
        }
        Command::Roots { poly } => {
            let p = nonconstant(poly)?;
            let set = find_roots(&p).map_err(|e| match e {
                RootError::Poly(e) => Failure::input(e),
                e @ RootError::NoConvergence { .. } => Failure {
                    code: EXIT_NO_CANDIDATES,
                    message: e.to_string(),
                },
            })?;
            let json = RootsJson {
                polynomial: p.to_string(),
                roots: set
                    .roots
                    .iter()
                    .map(|r| RootJson {
                        root: r.location.into(),
                        multiplicity: r.multiplicity,
                    })
                    .collect(),
                residual_bound: set.residual_bound,
            };
            (Report::Roots(json), EXIT_OK)
        }
    };
    emit(&value, cli.output, out).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot write output: {e}"),
    })?;
    Ok(code)
}

fn polynomial(args: &PolyArgs) -> Result<Polynomial, Failure> {
    let format = match args.poly_format {
        InputFormat::Expr => PolyFormat::Expression,
        InputFormat::Coeffs => PolyFormat::Coefficients,
    };
    parse_polynomial(&args.poly, format).map_err(|e| Failure::input(format!("--poly: {e}")))
}

fn nonconstant(args: &PolyArgs) -> Result<Polynomial, Failure> {
    let p = polynomial(args)?;
    p.nonconstant_degree().map_err(|e| Failure::input(format!("--poly: {e}")))?;
    Ok(p)
}

fn explain_cone(p: &Polynomial, z: Complex64) -> ExplainJson {
    match compute_cone(p, z) {
        Ok(cone) => {
            let outward = z.im.atan2(z.re);
            ExplainJson {
                k: Some(cone.k),
                alpha: Some(cone.alpha),
                at_root: cone.at_root,
                radial_outward: Some(direction_name(cone.classify(outward))),
                radial_inward: Some(direction_name(cone.classify(outward + std::f64::consts::PI))),
            }
        }
        Err(_) => ExplainJson {
            k: None,
            alpha: None,
            at_root: false,
            radial_outward: None,
            radial_inward: None,
        },
    }
}

fn direction_name(class: DirectionClass) -> &'static str {
    match class {
        DirectionClass::Ascent => "ascent",
        DirectionClass::Descent => "descent",
        DirectionClass::Boundary => "boundary",
        DirectionClass::AscentEverywhere => "ascent_everywhere",
    }
}

fn emit(report: &Report, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        OutputFormat::Text => text::write(report, out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum Report {
    Norm(NormJson),
    Certify(CertifyJson),
    Orbit(OrbitJson),
    Basins(BasinsJson),
    Roots(RootsJson),
}

/// Non-finite values (an infinite residual where `F` is undefined)
/// serialize as `null`.
#[derive(Debug, Serialize)]
struct CertificateJson {
    point: ComplexJson,
    residual: f64,
    modulus: f64,
    newton_ratio: f64,
    boundary_gap: f64,
    accepted: bool,
}

impl From<&StationarityCertificate> for CertificateJson {
    fn from(c: &StationarityCertificate) -> Self {
        CertificateJson {
            point: c.point.into(),
            residual: c.residual,
            modulus: c.modulus,
            newton_ratio: c.newton_ratio,
            boundary_gap: c.boundary_gap,
            accepted: c.accepted,
        }
    }
}

#[derive(Debug, Serialize)]
struct NormJson {
    polynomial: String,
    norm: f64,
    best_point: ComplexJson,
    candidates: Vec<CertificateJson>,
    method: &'static str,
    bernstein_ok: bool,
    seeds_used: usize,
    rng_seed: u64,
}

#[derive(Debug, Serialize)]
struct CertifyJson {
    polynomial: String,
    certificate: CertificateJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    explain: Option<ExplainJson>,
}

#[derive(Debug, Serialize)]
struct ExplainJson {
    k: Option<usize>,
    alpha: Option<f64>,
    at_root: bool,
    radial_outward: Option<&'static str>,
    radial_inward: Option<&'static str>,
}

#[derive(Debug, Serialize)]
struct OutcomeJson {
    status: &'static str,
    attractor: Option<ComplexJson>,
    reason: Option<&'static str>,
}

impl From<OrbitOutcome> for OutcomeJson {
    fn from(outcome: OrbitOutcome) -> Self {
        match outcome {
            OrbitOutcome::Converged { attractor } => OutcomeJson {
                status: "converged",
                attractor: Some(attractor.into()),
                reason: None,
            },
            OrbitOutcome::MaxIterExceeded => OutcomeJson {
                status: "max_iter_exceeded",
                attractor: None,
                reason: None,
            },
            OrbitOutcome::Singular { reason } => OutcomeJson {
                status: "singular",
                attractor: None,
                reason: Some(reason.as_str()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct OrbitJson {
    polynomial: String,
    method: &'static str,
    seed: ComplexJson,
    max_iter: usize,
    iterations: usize,
    iterate_count: usize,
    iterates: Vec<ComplexJson>,
    outcome: OutcomeJson,
}

#[derive(Debug, Serialize)]
struct BasinsJson {
    polynomial: String,
    method: &'static str,
    width: usize,
    height: usize,
    max_iter: usize,
    attractors: Vec<ComplexJson>,
    pixel_counts: Vec<usize>,
    unlabelled: usize,
    out: String,
    rng_seed: u64,
}

#[derive(Debug, Serialize)]
struct RootJson {
    root: ComplexJson,
    multiplicity: usize,
}

#[derive(Debug, Serialize)]
struct RootsJson {
    polynomial: String,
    roots: Vec<RootJson>,
    residual_bound: f64,
}
