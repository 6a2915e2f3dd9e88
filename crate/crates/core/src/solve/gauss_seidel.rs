//! Gauss-Seidel sweeps over graph matrices.
//!
//! Off-diagonal entries of a graph matrix are 0 or 1, so a sweep is pure
//! neighbor summation: no multiplications besides the diagonal division.
//! Strict diagonal dominance gives a contraction factor
//! `gamma = max_i d_i / (d + d_i + eps_i) <= 1/2` per sweep in the maximum
//! norm, so `s` sweeps from the zero vector land within `gamma^s * sqrt(n)`
//! of the exact solution.

use super::{SolveError, SolveReport};
use crate::matrix::GraphMatrix;
use crate::scalar::{BigFloat, ScalarOps};

/// Runs `sweeps` Gauss-Seidel sweeps for `A x = e_(rhs)` (0-based `rhs`)
/// in any scalar backend, starting from `start` (zero vector if `None`).
pub fn gs_sweeps<S: ScalarOps>(
    m: &GraphMatrix,
    rhs: usize,
    sweeps: u32,
    start: Option<&[S]>,
    ctx: &S::Ctx,
) -> Result<Vec<S>, SolveError> {
    let n = m.n();
    if let Some(s) = start {
        if s.len() != n {
            return Err(SolveError::StartLengthMismatch {
                expected: n,
                got: s.len(),
            });
        }
    }
    let diag: Vec<S> = (0..n).map(|i| S::from_rational(&m.diag(i), ctx)).collect();
    let one = S::from_u64(1, ctx);
    let zero = S::zero(ctx);
    let mut x: Vec<S> = match start {
        Some(s) => s.to_vec(),
        None => vec![zero.clone(); n],
    };
    for _ in 0..sweeps {
        for i in 0..n {
            let mut acc = if i == rhs { one.clone() } else { zero.clone() };
            for &j in m.neighbors(i) {
                acc = acc.sub(&x[j]);
            }
            x[i] = acc.div(&diag[i]);
        }
    }
    Ok(x)
}

/// Solves `A x = e_j` (1-based `j`) with exactly `sweeps` Gauss-Seidel
/// sweeps in `prec`-bit float arithmetic, reporting the worst-case
/// residual bound `gamma^sweeps * sqrt(n)`.
pub fn solve_gs(
    m: &GraphMatrix,
    j: u32,
    sweeps: u32,
    start: Option<&[BigFloat]>,
    prec: u32,
) -> Result<SolveReport<BigFloat>, SolveError> {
    if sweeps == 0 {
        return Err(SolveError::ZeroSweeps);
    }
    if j == 0 || j as usize > m.n() {
        return Err(SolveError::IndexOutOfRange(j, m.n() as u32));
    }
    let column = gs_sweeps::<BigFloat>(m, j as usize - 1, sweeps, start, &prec)?;
    let gamma = BigFloat::from_rational(&m.gamma(), prec);
    let delta0 = BigFloat::from_u64(m.n() as u64, prec).sqrt();
    let residual_bound = gamma.pow_u32(sweeps).mul(&delta0);
    Ok(SolveReport {
        column,
        sweeps_used: sweeps,
        residual_bound: Some(residual_bound),
    })
}
