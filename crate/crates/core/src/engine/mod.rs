//! Steady-state density-matrix engine for the four-level scheme.
//!
//! The rotating-frame equations of motion for {e, 1, 2, g} are written out
//! term by term in [`generator`] and assembled into a 16×16 superoperator on
//! the column-stacked density matrix. [`steady_state`] solves for its unique
//! null vector with unit trace. [`probe`] extracts the weak-probe response
//! s± either from a closed first-order subsystem or from the full nonlinear
//! steady state at small probe amplitude. Neither path uses the closed-form
//! expressions in [`crate::analytic`].

pub mod generator;
pub mod probe;
pub mod steady_state;

use nalgebra::Matrix4;
use num_complex::Complex64;
use thiserror::Error;

use crate::params::{ParamError, SystemParams};

pub use generator::{build_generator, GeneratorMatrix};
pub use probe::{probe_response_finite, probe_response_perturbative, MAX_FINITE_PROBE};
pub use steady_state::{steady_state, RESIDUAL_TOLERANCE};

/// Absolute tolerance for density-matrix and generator invariants.
pub const INVARIANT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("singular system in {stage} solve for {params:?}")]
    Singular { stage: &'static str, params: Box<SystemParams> },
    #[error("steady-state residual {residual:e} exceeds bound {bound:e}")]
    Residual { residual: f64, bound: f64 },
    #[error("density matrix invariant violated: {what} (deviation {deviation:e})")]
    Invariant { what: &'static str, deviation: f64 },
    #[error("probe too strong: g = {0} (must lie in (0, {max}])", max = MAX_FINITE_PROBE)]
    ProbeTooStrong(f64),
    #[error("probe amplitude must be positive and finite, got {0}")]
    ProbeNonPositive(f64),
}

/// Atomic levels in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Excited = 0,
    One = 1,
    Two = 2,
    Ground = 3,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Excited, Level::One, Level::Two, Level::Ground];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Position of ρ_ij in the column-stacked vector.
pub fn vec_index(row: Level, col: Level) -> usize {
    row.index() + 4 * col.index()
}

/// Unit-trace Hermitian state over {e, 1, 2, g}.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    rho: Matrix4<Complex64>,
}

impl DensityMatrix {
    /// Wraps `rho` after checking Hermiticity, unit trace and non-negative
    /// populations to [`INVARIANT_TOLERANCE`].
    pub fn new(rho: Matrix4<Complex64>) -> Result<Self, EngineError> {
        let herm = (rho - rho.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if herm > INVARIANT_TOLERANCE {
            return Err(EngineError::Invariant { what: "hermiticity", deviation: herm });
        }
        let trace = rho.trace();
        let trace_dev = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > INVARIANT_TOLERANCE {
            return Err(EngineError::Invariant { what: "unit trace", deviation: trace_dev });
        }
        let min_pop = (0..4).map(|i| rho[(i, i)].re).fold(f64::INFINITY, f64::min);
        if min_pop < -INVARIANT_TOLERANCE {
            return Err(EngineError::Invariant { what: "non-negative populations", deviation: -min_pop });
        }
        Ok(Self { rho })
    }

    /// Pure population in a single level.
    pub fn pure(level: Level) -> Self {
        let mut rho = Matrix4::zeros();
        rho[(level.index(), level.index())] = Complex64::new(1.0, 0.0);
        Self { rho }
    }

    pub fn element(&self, row: Level, col: Level) -> Complex64 {
        self.rho[(row.index(), col.index())]
    }

    pub fn population(&self, level: Level) -> f64 {
        self.element(level, level).re
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.rho
    }
}
