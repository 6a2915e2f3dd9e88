//! Column signatures and similarity classes.
//!
//! Two inverse columns are interchangeable when one is a component
//! permutation of the other, so the comparable form of a column is its
//! sorted entry list. Exact scalars compare as exact rationals; float
//! scalars are first snapped to a grid of width `compare_tolerance`, which
//! keeps "equal within tolerance" a true equivalence relation.

use super::columns::InverseColumns;
use super::EngineError;
use crate::scalar::{grid_index, ScalarOps};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Comparison key of one scalar: the exact value, or its tolerance-grid
/// index for the float backend.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigKey {
    Exact(BigRational),
    Grid(BigInt),
}

/// Turns scalars into comparison keys. `tolerance = None` means exact.
#[derive(Debug, Clone, Default)]
pub struct SigQuant {
    tolerance: Option<BigRational>,
}

impl SigQuant {
    pub fn exact() -> Self {
        SigQuant { tolerance: None }
    }

    pub fn grid(tolerance: BigRational) -> Self {
        assert!(tolerance.is_positive());
        SigQuant {
            tolerance: Some(tolerance),
        }
    }

    pub fn tolerance(&self) -> Option<&BigRational> {
        self.tolerance.as_ref()
    }

    pub fn key<S: ScalarOps>(&self, v: &S) -> SigKey {
        let r = v.to_rational();
        match &self.tolerance {
            None => SigKey::Exact(r),
            Some(tol) => SigKey::Grid(grid_index(&r, tol)),
        }
    }
}

/// Comparable form of one column: its diagonal entry and the sorted
/// component list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub diag: SigKey,
    pub entries: Vec<SigKey>,
}

/// Signature of column `j` (1-based).
pub fn signature<S: ScalarOps>(
    cols: &InverseColumns<S>,
    j: u32,
    quant: &SigQuant,
) -> Signature {
    let column = cols.column(j as usize - 1);
    let diag = quant.key(&column[j as usize - 1]);
    let mut entries: Vec<SigKey> = column.iter().map(|v| quant.key(v)).collect();
    entries.sort_unstable();
    debug_assert!(entries.binary_search(&diag).is_ok());
    Signature { diag, entries }
}

/// Similarity classes of a full inverse: vertices grouped by equal
/// signature, ordered by smallest member.
#[derive(Debug, Clone)]
pub struct Partition {
    /// 1-based vertex sets, each sorted, ordered by first member.
    pub classes: Vec<Vec<u32>>,
    /// Exact diagonal value of each class representative (first member).
    pub diag_reprs: Vec<BigRational>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_simple(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// |diag_k - diag_l| for class indices (0-based).
    pub fn delta(&self, k: usize, l: usize) -> BigRational {
        (&self.diag_reprs[k] - &self.diag_reprs[l]).abs()
    }

    /// All pairwise distances, lexicographic in (k, l), 1-based indices.
    pub fn deltas(&self) -> Vec<(u32, u32, BigRational)> {
        let m = self.classes.len();
        let mut out = Vec::with_capacity(m * (m.saturating_sub(1)) / 2);
        for k in 0..m {
            for l in k + 1..m {
                out.push((k as u32 + 1, l as u32 + 1, self.delta(k, l)));
            }
        }
        out
    }

    /// Smallest pairwise class distance; error when fewer than two classes.
    pub fn min_delta(&self) -> Result<BigRational, EngineError> {
        self.deltas()
            .into_iter()
            .map(|(_, _, d)| d)
            .min()
            .ok_or(EngineError::NoClassDistance)
    }
}

/// Groups all columns by signature equality.
pub fn partition<S: ScalarOps>(cols: &InverseColumns<S>, quant: &SigQuant) -> Partition {
    let n = cols.n();
    let mut groups: Vec<(Signature, Vec<u32>)> = Vec::new();
    for j in 1..=n as u32 {
        let sig = signature(cols, j, quant);
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push(j),
            None => groups.push((sig, vec![j])),
        }
    }
    // Insertion order == order of smallest member, since vertices are
    // scanned ascending.
    let classes: Vec<Vec<u32>> = groups.iter().map(|(_, m)| m.clone()).collect();
    let diag_reprs = classes
        .iter()
        .map(|members| {
            let v = members[0] as usize - 1;
            cols.column(v)[v].to_rational()
        })
        .collect();
    Partition {
        classes,
        diag_reprs,
    }
}

/// Whether the two inverses have identical signature multisets.
pub fn similar<S: ScalarOps>(
    a: &InverseColumns<S>,
    b: &InverseColumns<S>,
    quant: &SigQuant,
) -> Result<bool, EngineError> {
    if a.n() != b.n() {
        return Err(EngineError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let mut sigs_a: Vec<Signature> =
        (1..=a.n() as u32).map(|j| signature(a, j, quant)).collect();
    let mut sigs_b: Vec<Signature> =
        (1..=b.n() as u32).map(|j| signature(b, j, quant)).collect();
    sigs_a.sort_unstable();
    sigs_b.sort_unstable();
    Ok(sigs_a == sigs_b)
}
