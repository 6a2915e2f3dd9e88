//! Linear solvers for graph matrices: an exact fraction-free backend and a
//! fixed-precision Gauss-Seidel backend, plus a small spectral estimator.

mod exact;
mod gauss_seidel;
mod spectral;

pub use exact::{det_exact, det_rational_matrix, invert_exact, solve_exact, ExactInverse};
pub use gauss_seidel::{gs_sweeps, solve_gs};
pub use spectral::eigenvalue_ratio_estimate;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("basis index {0} out of range 1..={1}")]
    IndexOutOfRange(u32, u32),
    #[error("at least one sweep is required")]
    ZeroSweeps,
    #[error("start vector has length {got}, expected {expected}")]
    StartLengthMismatch { expected: usize, got: usize },
}

/// One solved column of the inverse.
#[derive(Debug, Clone)]
pub struct SolveReport<S> {
    /// Solution of `A x = e_j`, i.e. column `j` of the inverse.
    pub column: Vec<S>,
    /// Sweeps performed; 0 for the direct exact backend.
    pub sweeps_used: u32,
    /// `gamma^sweeps * sqrt(n)`: worst-case error of the iterative
    /// backend. `None` for the exact backend.
    pub residual_bound: Option<S>,
}
