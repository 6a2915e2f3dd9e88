//! The graph matrix: adjacency plus a dominant diagonal, with accumulated
//! diagonal perturbations.
//!
//! For a graph with maximum degree `d`, entry `(i, i)` is
//! `d + d_i + eps_i` and entry `(i, j)` is the 0/1 adjacency indicator.
//! Row `i` therefore dominates its off-diagonal sum by `d + eps_i > 0`,
//! which makes the matrix symmetric positive definite, keeps every linear
//! system `A x = e_j` uniquely solvable, and bounds the Gauss-Seidel
//! contraction factor by 1/2.

use crate::graph::Graph;
use crate::scalar::{decimal_significant, ScalarOps};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("graph has no edges: the graph matrix would be singular")]
    EdgelessGraph,
    #[error("perturbation must be positive, got {0}")]
    NonPositiveEps(String),
    #[error("vertex {0} out of range 1..={1}")]
    IndexOutOfRange(u32, u32),
}

/// Symmetric positive-definite graph matrix with per-vertex perturbations.
///
/// Values are persistent: [`GraphMatrix::perturb`] returns a new matrix and
/// leaves the receiver unchanged, so candidate perturbations can be explored
/// without undo logic.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMatrix {
    n: usize,
    /// 0-based sorted neighbor lists.
    neighbors: Vec<Vec<usize>>,
    /// `d + d_i` per vertex.
    base_diag: Vec<u64>,
    /// Accumulated perturbation per vertex, all >= 0.
    eps: Vec<BigRational>,
    max_degree: u32,
}

impl GraphMatrix {
    /// Builds the matrix for `g`. Fails on edgeless graphs (`d = 0` would
    /// make the matrix singular); isolated vertices in a graph that has
    /// edges elsewhere are fine.
    pub fn build(g: &Graph) -> Result<Self, MatrixError> {
        let info = g.degree_info();
        if info.max_degree == 0 {
            return Err(MatrixError::EdgelessGraph);
        }
        let n = g.vertex_count() as usize;
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in g.edges() {
            neighbors[u as usize - 1].push(v as usize - 1);
            neighbors[v as usize - 1].push(u as usize - 1);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let base_diag = info
            .degrees
            .iter()
            .map(|&di| di as u64 + info.max_degree as u64)
            .collect();
        Ok(GraphMatrix {
            n,
            neighbors,
            base_diag,
            eps: vec![BigRational::zero(); n],
            max_degree: info.max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Sorted 0-based neighbors of 0-based vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.base_diag[i] - self.max_degree as u64
    }

    /// Exact diagonal entry `d + d_i + eps_i` (0-based index).
    pub fn diag(&self, i: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.base_diag[i])) + &self.eps[i]
    }

    pub fn eps(&self, i: usize) -> &BigRational {
        &self.eps[i]
    }

    /// Exact entry (0-based indices).
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        if i == j {
            self.diag(i)
        } else if self.neighbors[i].binary_search(&j).is_ok() {
            BigRational::from_integer(BigInt::from(1))
        } else {
            BigRational::zero()
        }
    }

    /// Returns a new matrix with `eps` added at 1-based vertex `index`.
    pub fn perturb(&self, index: u32, eps: &BigRational) -> Result<Self, MatrixError> {
        if !eps.is_positive() {
            return Err(MatrixError::NonPositiveEps(eps.to_string()));
        }
        if index == 0 || index as usize > self.n {
            return Err(MatrixError::IndexOutOfRange(index, self.n as u32));
        }
        let mut next = self.clone();
        next.eps[index as usize - 1] += eps;
        Ok(next)
    }

    /// The largest accumulated perturbation, for bound validity checks.
    pub fn max_eps(&self) -> BigRational {
        self.eps
            .iter()
            .cloned()
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Gauss-Seidel contraction factor `max_i sum_{j != i} |a_ij| / a_ii`.
    /// At most 1/2 for every graph matrix since `d_i <= d`.
    pub fn gamma(&self) -> BigRational {
        (0..self.n)
            .map(|i| {
                BigRational::from_integer(BigInt::from(self.neighbors[i].len())) / self.diag(i)
            })
            .max()
            .expect("matrix has at least one row")
    }

    /// Conditioning bound `eta / chi`: the row with the largest
    /// diagonal-plus-offdiagonal sum over the smallest dominance margin.
    pub fn condition_bound(&self) -> BigRational {
        let eta = (0..self.n)
            .map(|i| self.diag(i) + BigInt::from(self.neighbors[i].len()))
            .max()
            .expect("non-empty");
        let chi = (0..self.n)
            .map(|i| self.diag(i) - BigInt::from(self.neighbors[i].len()))
            .min()
            .expect("non-empty");
        eta / chi
    }

    /// Dense scalar copy for a solver backend.
    pub fn to_dense<S: ScalarOps>(&self, ctx: &S::Ctx) -> Vec<Vec<S>> {
        let one = S::from_u64(1, ctx);
        let mut rows = vec![vec![S::zero(ctx); self.n]; self.n];
        for i in 0..self.n {
            rows[i][i] = S::from_rational(&self.diag(i), ctx);
            for &j in &self.neighbors[i] {
                rows[i][j] = one.clone();
            }
        }
        rows
    }

    /// Dense f64 copy, for the spectral estimate used in tests.
    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        let mut rows = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            rows[i][i] = self.diag(i).to_f64().expect("diagonal fits in f64");
            for &j in &self.neighbors[i] {
                rows[i][j] = 1.0;
            }
        }
        rows
    }

    /// Aligned decimal text (4 significant digits per entry).
    pub fn render_aligned(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| decimal_significant(&self.entry(i, j), 4))
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ref_a() -> Graph {
        parse_edge_list("6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 6\n3 6\n4 5\n4 6\n5 6").unwrap()
    }

    fn ref_b() -> Graph {
        parse_edge_list("6\n1 3\n1 4\n1 5\n1 6\n2 3\n2 4\n2 5\n2 6\n3 4\n5 6").unwrap()
    }

    #[test]
    fn reference_diagonals() {
        let a = GraphMatrix::build(&ref_a()).unwrap();
        let diag: Vec<u64> = (0..6).map(|i| a.base_diag[i]).collect();
        assert_eq!(diag, vec![8, 7, 7, 7, 7, 8]);
        let b = GraphMatrix::build(&ref_b()).unwrap();
        let diag: Vec<u64> = (0..6).map(|i| b.base_diag[i]).collect();
        assert_eq!(diag, vec![8, 8, 7, 7, 7, 7]);
    }

    #[test]
    fn complete_three_matrix() {
        let k3 = crate::graph::generate(&crate::graph::GraphKind::Complete { n: 3 }, 0).unwrap();
        let m = GraphMatrix::build(&k3).unwrap();
        for i in 0..3 {
            assert_eq!(m.diag(i), rat(4, 1));
            for j in 0..3 {
                if i != j {
                    assert_eq!(m.entry(i, j), rat(1, 1));
                }
            }
        }
    }

    #[test]
    fn edgeless_rejected() {
        let g = Graph::new(3, []).unwrap();
        assert_eq!(GraphMatrix::build(&g), Err(MatrixError::EdgelessGraph));
    }

    #[test]
    fn perturb_is_persistent_and_additive() {
        let a = GraphMatrix::build(&ref_a()).unwrap();
        let a1 = a.perturb(1, &rat(1, 10)).unwrap();
        assert_eq!(a.diag(0), rat(8, 1));
        assert_eq!(a1.diag(0), rat(81, 10));
        let a2 = a1.perturb(2, &rat(2, 10)).unwrap();
        assert_eq!(a2.diag(0), rat(81, 10));
        assert_eq!(a2.diag(1), rat(72, 10));
        // off-diagonal pattern untouched
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert_eq!(a2.entry(i, j), a.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn perturb_rejects_bad_arguments() {
        let a = GraphMatrix::build(&ref_a()).unwrap();
        assert!(matches!(
            a.perturb(1, &rat(-1, 10)),
            Err(MatrixError::NonPositiveEps(_))
        ));
        assert!(matches!(
            a.perturb(7, &rat(1, 10)),
            Err(MatrixError::IndexOutOfRange(7, 6))
        ));
    }

    #[test]
    fn condition_bound_reference_and_complete() {
        let a = GraphMatrix::build(&ref_a()).unwrap();
        assert_eq!(a.condition_bound(), rat(3, 1));
        let k5 = crate::graph::generate(&crate::graph::GraphKind::Complete { n: 5 }, 0).unwrap();
        let m = GraphMatrix::build(&k5).unwrap();
        assert_eq!(m.condition_bound(), rat(3, 1));
    }

    #[test]
    fn gamma_at_most_half() {
        let a = GraphMatrix::build(&ref_a()).unwrap();
        assert!(a.gamma() <= rat(1, 2));
        assert_eq!(a.gamma(), rat(4, 8));
    }
}
