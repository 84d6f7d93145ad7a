use num_complex::Complex64;

use crate::poly::Polynomial;
use crate::stationarity::{basic_family_step, fixed_point_map, pseudo_newton_step, FamilyOrder, Singular};

/// An orbit has converged once this many consecutive steps are shorter than
/// [`STEP_TOL`].
pub const CONFIRM_STEPS: usize = 3;
pub const STEP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Iteration {
    /// `z <- F(z)`.
    FixedPoint,
    /// Newton on the frozen-modulus pseudo-polynomial.
    PseudoNewton,
    /// Halley on the frozen-modulus pseudo-polynomial.
    BasicFamily3,
}

impl Iteration {
    pub fn step(self, p: &Polynomial, z: Complex64) -> Result<Complex64, Singular> {
        match self {
            Iteration::FixedPoint => fixed_point_map(p, z),
            Iteration::PseudoNewton => pseudo_newton_step(p, z),
            Iteration::BasicFamily3 => basic_family_step(p, z, FamilyOrder::Three),
        }
    }

    /// Iteration cap used by the norm solver. The fixed-point map gets a
    /// longer budget so slow convergence near indifferent points shows up.
    pub fn default_max_iter(self) -> usize {
        match self {
            Iteration::FixedPoint => 1000,
            Iteration::PseudoNewton | Iteration::BasicFamily3 => 200,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Iteration::FixedPoint => "f-iter",
            Iteration::PseudoNewton => "pseudo-newton",
            Iteration::BasicFamily3 => "basic-family3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitOutcome {
    Converged { attractor: Complex64 },
    MaxIterExceeded,
    Singular { reason: Singular },
}

impl OrbitOutcome {
    pub fn attractor(&self) -> Option<Complex64> {
        match *self {
            OrbitOutcome::Converged { attractor } => Some(attractor),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTrace {
    pub seed: Complex64,
    /// `iterates[0]` is the seed; at most `max_iter + 1` entries.
    pub iterates: Vec<Complex64>,
    pub outcome: OrbitOutcome,
    /// Steps taken before the orbit settled, excluding the confirmation
    /// steps. Equals the number of steps taken when not converged.
    pub iterations: usize,
}

/// Runs the iteration without recording iterates.
pub fn orbit_endpoint(
    p: &Polynomial,
    iteration: Iteration,
    seed: Complex64,
    max_iter: usize,
) -> (OrbitOutcome, usize) {
    iterate(p, iteration, seed, max_iter, |_| {})
}

pub fn run_orbit(p: &Polynomial, iteration: Iteration, seed: Complex64, max_iter: usize) -> OrbitTrace {
    let mut iterates = vec![seed];
    let (outcome, iterations) = iterate(p, iteration, seed, max_iter, |z| iterates.push(z));
    OrbitTrace {
        seed,
        iterates,
        outcome,
        iterations,
    }
}

pub fn fixed_point_orbit(p: &Polynomial, seed: Complex64, max_iter: usize) -> OrbitTrace {
    run_orbit(p, Iteration::FixedPoint, seed, max_iter)
}

pub fn pseudo_newton_orbit(p: &Polynomial, seed: Complex64, max_iter: usize) -> OrbitTrace {
    run_orbit(p, Iteration::PseudoNewton, seed, max_iter)
}

fn iterate(
    p: &Polynomial,
    iteration: Iteration,
    seed: Complex64,
    max_iter: usize,
    mut record: impl FnMut(Complex64),
) -> (OrbitOutcome, usize) {
    let mut z = seed;
    let mut short_steps = 0;
    for k in 0..max_iter {
        let next = match iteration.step(p, z) {
            Ok(next) => next,
            Err(reason) => return (OrbitOutcome::Singular { reason }, k),
        };
        record(next);
        let step = (next - z).norm();
        z = next;
        if step < STEP_TOL {
            short_steps += 1;
            if short_steps == CONFIRM_STEPS {
                return (OrbitOutcome::Converged { attractor: z }, k + 1 - CONFIRM_STEPS);
            }
        } else {
            short_steps = 0;
        }
    }
    (OrbitOutcome::MaxIterExceeded, max_iter)
}
