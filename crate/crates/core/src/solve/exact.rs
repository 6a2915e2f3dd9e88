//! Fraction-free exact elimination.
//!
//! Rational entries are cleared to integers once, then all elimination is
//! integer-only with exact divisions (Bareiss update), which keeps
//! intermediate growth at cofactor scale instead of compounding rational
//! gcd work. The two-sided (Gauss-Jordan) variant ends with the
//! determinant on the diagonal and the adjugate in the augmented block,
//! giving every inverse column in one pass.

use super::{SolveError, SolveReport};
use crate::matrix::GraphMatrix;
use crate::scalar::Rat;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact inverse: all columns plus the determinant.
#[derive(Debug, Clone)]
pub struct ExactInverse {
    /// `columns[j][i]` is component `i` of the solution of `A x = e_j`.
    pub columns: Vec<Vec<BigRational>>,
    pub det: BigRational,
}

/// Common denominator and integer matrix `L * A`.
fn integerize(m: &GraphMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = m.n();
    let mut lcm = BigInt::one();
    for i in 0..n {
        lcm = lcm.lcm(&m.diag(i).denom().clone());
    }
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        let diag = m.diag(i);
        rows[i][i] = diag.numer() * (&lcm / diag.denom());
        for &j in m.neighbors(i) {
            rows[i][j] = lcm.clone();
        }
    }
    (rows, lcm)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    debug_assert!(!den.is_zero());
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "fraction-free division left a remainder");
    q
}

/// Inverts a graph matrix exactly. One two-sided fraction-free elimination
/// on `[L*A | I]` produces every column.
pub fn invert_exact(m: &GraphMatrix) -> ExactInverse {
    let n = m.n();
    let (mut a, lcm) = integerize(m);
    // Augment with the identity.
    for (i, row) in a.iter_mut().enumerate() {
        row.resize(2 * n, BigInt::zero());
        row[n + i] = BigInt::one();
    }

    let mut prev = BigInt::one();
    for p in 0..n {
        let pivot = a[p][p].clone();
        debug_assert!(!pivot.is_zero(), "graph matrices are positive definite");
        for r in 0..n {
            if r == p {
                continue;
            }
            let factor = a[r][p].clone();
            for c in 0..2 * n {
                if c == p {
                    continue;
                }
                let v = &pivot * &a[r][c] - &factor * &a[p][c];
                a[r][c] = exact_div(v, &prev);
            }
            a[r][p] = BigInt::zero();
        }
        prev = pivot;
    }

    let det_int = a[n - 1][n - 1].clone();
    debug_assert!((0..n).all(|i| a[i][i] == det_int));

    // (LA)^{-1} = adj(LA) / det(LA) and A^{-1} = L * (LA)^{-1},
    // so x_j[i] = L * adj[i][j] / det.
    let columns = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| BigRational::new(&lcm * &a[i][n + j], det_int.clone()))
                .collect()
        })
        .collect();
    let det = BigRational::new(det_int, pow_int(&lcm, n as u32));
    ExactInverse { columns, det }
}

fn pow_int(base: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Solves `A x = e_j` exactly (`j` is 1-based).
pub fn solve_exact(m: &GraphMatrix, j: u32) -> Result<SolveReport<Rat>, SolveError> {
    if j == 0 || j as usize > m.n() {
        return Err(SolveError::IndexOutOfRange(j, m.n() as u32));
    }
    let inv = invert_exact(m);
    Ok(SolveReport {
        column: inv.columns[j as usize - 1].iter().cloned().map(Rat).collect(),
        sweeps_used: 0,
        residual_bound: None,
    })
}

/// Exact determinant by one-sided fraction-free triangularization.
pub fn det_exact(m: &GraphMatrix) -> BigRational {
    let n = m.n();
    let (rows, lcm) = integerize(m);
    let rational_rows: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    det_rational_matrix(&rational_rows) / BigRational::from_integer(pow_int(&lcm, n as u32))
}

/// Determinant of an arbitrary square rational matrix (fraction-free with
/// row pivoting). Used for minors and cofactor cross-checks.
pub fn det_rational_matrix(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    // Clear each row's denominators; track the accumulated scale.
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        assert_eq!(row.len(), n, "matrix must be square");
        let mut lcm = BigInt::one();
        for v in row {
            lcm = lcm.lcm(v.denom());
        }
        scale *= &lcm;
        a.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
    }

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for r in p + 1..n {
            for c in p + 1..n {
                let v = &a[p][p] * &a[r][c] - &a[r][p] * &a[p][c];
                a[r][c] = exact_div(v, &prev);
            }
            a[r][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    BigRational::new(sign * a[n - 1][n - 1].clone(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, parse_edge_list, GraphKind};
    use crate::scalar::ScalarOps;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ref_a() -> GraphMatrix {
        let g =
            parse_edge_list("6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 6\n3 6\n4 5\n4 6\n5 6").unwrap();
        GraphMatrix::build(&g).unwrap()
    }

    #[test]
    fn det_of_complete_three() {
        let k3 = generate(&GraphKind::Complete { n: 3 }, 0).unwrap();
        let m = GraphMatrix::build(&k3).unwrap();
        assert_eq!(det_exact(&m), rat(54, 1));
    }

    #[test]
    fn det_positive_for_graph_matrices() {
        for (kind, seed) in [
            (GraphKind::Gnp { n: 7, prob: 0.4 }, 3u64),
            (GraphKind::Gnp { n: 9, prob: 0.6 }, 4),
            (GraphKind::Torus { rows: 3, cols: 3 }, 0),
        ] {
            let g = generate(&kind, seed).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            let m = GraphMatrix::build(&g).unwrap();
            assert!(det_exact(&m).is_positive());
        }
    }

    #[test]
    fn inverse_columns_solve_their_systems() {
        let m = ref_a().perturb(1, &rat(1, 10)).unwrap();
        let inv = invert_exact(&m);
        for j in 0..6 {
            for i in 0..6 {
                let mut acc = BigRational::zero();
                for k in 0..6 {
                    acc += m.entry(i, k) * &inv.columns[j][k];
                }
                let want = if i == j { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(acc, want, "row {i}, column {j}");
            }
        }
        assert_eq!(inv.det, det_exact(&m));
    }

    #[test]
    fn solve_exact_matches_reference_display() {
        // First column of the unperturbed six-vertex reference inverse.
        let rep = solve_exact(&ref_a(), 1).unwrap();
        let col: Vec<f64> = rep.column.iter().map(|v| v.to_f64()).collect();
        let expect = [0.133929, -0.017857, -0.017857, -0.017857, -0.017857, 0.008929];
        for (got, want) in col.iter().zip(expect) {
            assert!((got - want).abs() < 5e-7, "{got} vs {want}");
        }
        assert_eq!(rep.sweeps_used, 0);
        assert!(rep.residual_bound.is_none());

        let rep2 = solve_exact(&ref_a(), 2).unwrap();
        assert!((rep2.column[1].to_f64() - 0.150298).abs() < 5e-7);
        assert!((rep2.column[2].to_f64() - (-0.016369)).abs() < 5e-7);
    }

    #[test]
    fn solve_exact_rejects_bad_index() {
        assert!(matches!(
            solve_exact(&ref_a(), 0),
            Err(SolveError::IndexOutOfRange(0, 6))
        ));
        assert!(matches!(
            solve_exact(&ref_a(), 7),
            Err(SolveError::IndexOutOfRange(7, 6))
        ));
    }

    #[test]
    fn det_update_under_perturbation() {
        // det(A + eps * E_jj) - det(A) = eps * cofactor_jj, with the
        // cofactor computed independently from the minor.
        let m = ref_a();
        let eps = rat(1, 10);
        let j = 0usize;
        let perturbed = m.perturb(1, &eps).unwrap();
        let minor: Vec<Vec<BigRational>> = (0..6)
            .filter(|&i| i != j)
            .map(|i| {
                (0..6)
                    .filter(|&c| c != j)
                    .map(|c| m.entry(i, c))
                    .collect()
            })
            .collect();
        let cofactor = det_rational_matrix(&minor);
        assert_eq!(det_exact(&perturbed) - det_exact(&m), eps * cofactor);
    }

    #[test]
    fn det_rational_matrix_handles_pivoting_and_singularity() {
        // Needs a row swap on the zero leading pivot.
        let rows = vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ];
        assert_eq!(det_rational_matrix(&rows), rat(-1, 1));
        let singular = vec![
            vec![rat(1, 2), rat(1, 1)],
            vec![rat(1, 4), rat(1, 2)],
        ];
        assert_eq!(det_rational_matrix(&singular), rat(0, 1));
    }
}
