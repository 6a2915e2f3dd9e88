//! All inverse columns of a graph matrix, in either scalar backend.

use crate::matrix::GraphMatrix;
use crate::scalar::{BigFloat, Rat, ScalarOps};
use crate::solve::{gs_sweeps, invert_exact};

/// The `n` solutions of `A x = e_j`, i.e. the columns of the inverse.
#[derive(Debug, Clone)]
pub struct InverseColumns<S> {
    columns: Vec<Vec<S>>,
    sweeps_used: u32,
}

impl<S: ScalarOps> InverseColumns<S> {
    pub fn new(columns: Vec<Vec<S>>, sweeps_used: u32) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == columns.len()));
        InverseColumns {
            columns,
            sweeps_used,
        }
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Column `j` (0-based): the solution of `A x = e_{j+1}`.
    pub fn column(&self, j: usize) -> &[S] {
        &self.columns[j]
    }

    pub fn sweeps_used(&self) -> u32 {
        self.sweeps_used
    }

    /// Exact diagonal entry `x_jj` (0-based `j`).
    pub fn diag(&self, j: usize) -> &S {
        &self.columns[j][j]
    }

    /// Applies a diagonal perturbation directly to the inverse:
    /// `(A + eps e_l e_l^T)^{-1} = A^{-1} - c y_l y_l^T` with
    /// `c = eps / (1 + eps x_ll)` and `y_l` the l-th column. Exact in
    /// rational arithmetic; used to screen candidate perturbations without
    /// a fresh solve. `l` is 1-based.
    pub fn rank_one_update(&self, l: u32, eps: &S) -> InverseColumns<S> {
        let li = l as usize - 1;
        let y_l = &self.columns[li];
        // c = eps / (1 + eps * x_ll)
        let c = eps.div(&eps.one_like().add(&eps.mul(&y_l[li])));
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, col)| {
                let scale = c.mul(&y_l[k]);
                col.iter()
                    .zip(y_l.iter())
                    .map(|(v, yi)| v.sub(&scale.mul(yi)))
                    .collect()
            })
            .collect();
        InverseColumns::new(columns, self.sweeps_used)
    }
}

/// Exact inverse columns.
pub fn inverse_columns_exact(m: &GraphMatrix) -> InverseColumns<Rat> {
    let inv = invert_exact(m);
    InverseColumns::new(
        inv.columns
            .into_iter()
            .map(|col| col.into_iter().map(Rat).collect())
            .collect(),
        0,
    )
}

/// Gauss-Seidel inverse columns at `prec` mantissa bits, `sweeps` sweeps
/// per system from the zero vector.
pub fn inverse_columns_gs(m: &GraphMatrix, sweeps: u32, prec: u32) -> InverseColumns<BigFloat> {
    let n = m.n();
    let columns: Vec<Vec<BigFloat>> = (0..n)
        .map(|j| gs_sweeps::<BigFloat>(m, j, sweeps, None, &prec).expect("valid sweep setup"))
        .collect();
    InverseColumns::new(columns, sweeps)
}
