//! Run outcome and the per-iteration trace.
//!
//! Scalars are carried as decimal strings (with the exact fraction
//! alongside where the value is consumed by replay tools), so serialized
//! traces are identical across platforms.

use crate::graph::Permutation;
use crate::scalar::{decimal_significant, ScalarOps};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::partition::Partition;

/// Trace-facing rendering width: matches the narrative's 4 significant
/// digits, with two extra digits so replays can disambiguate.
const TRACE_DIGITS: u32 = 6;

pub(crate) fn trace_decimal(v: &BigRational) -> String {
    decimal_significant(v, TRACE_DIGITS)
}

/// State before the first perturbation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StartRecord {
    pub n: u32,
    pub max_degree: u32,
    pub backend: String,
    pub eps_mode: String,
    /// Classes of the first graph's unperturbed inverse.
    pub classes_a: Vec<Vec<u32>>,
    pub m_a: usize,
    pub m_b: usize,
    /// Pairwise class distances `(k, l, value)` on the first graph's side.
    pub deltas_a: Vec<(u32, u32, String)>,
    pub delta_min: Option<String>,
    /// Set when the run was decided before any perturbation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pre_scheme_reject: Option<String>,
}

/// One perturbation iteration.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IterationRecord {
    pub j: u32,
    /// Perturbation size as a decimal.
    pub epsilon: String,
    /// Exact fraction, e.g. "1/216".
    pub epsilon_exact: String,
    /// Candidate vertices of the second graph tried at this iteration,
    /// in order.
    pub candidates_tried: Vec<u32>,
    /// Accepted candidate.
    pub k_j: u32,
    pub m_a: usize,
    pub m_b: usize,
    /// Smallest class distance after this iteration (first graph's side).
    pub delta_min: Option<String>,
    pub classes_a: Vec<Vec<u32>>,
    pub deltas_a: Vec<(u32, u32, String)>,
    /// Gauss-Seidel sweeps per solve at this iteration (0 = exact).
    pub sweeps: u32,
    /// Wall time of the iteration; informational, excluded from
    /// byte-stable output by serializers that need stability.
    pub wall_time_ms: u64,
}

/// Why a run was rejected (or demoted).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    VertexCountMismatch,
    /// Sorted degree sequences differ (this covers edge-count mismatches:
    /// the degree sum is twice the edge count).
    DegreeSequenceMismatch,
    /// No candidate vertex of the second graph matched at some iteration.
    NoSimilarCandidate,
    /// Signature matching after the perturbation loop found no unique
    /// partner for some vertex.
    SignatureMatchingFailed,
    /// The assembled mapping failed edge verification and the verdict was
    /// demoted.
    MappingVerificationFailed,
}

impl RejectReason {
    pub fn description(&self) -> &'static str {
        match self {
            RejectReason::VertexCountMismatch => "vertex count mismatch",
            RejectReason::DegreeSequenceMismatch => "degree sequence mismatch",
            RejectReason::NoSimilarCandidate => "no similar candidate",
            RejectReason::SignatureMatchingFailed => "signature matching failed",
            RejectReason::MappingVerificationFailed => "mapping verification failed",
        }
    }
}

/// Final verdict. `Isomorphic` always carries a mapping that passed edge
/// verification; everything else is the conflated negative the method
/// produces (not isomorphic, or isomorphic but not reconstructible).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Isomorphic {
        /// `mapping[i]` is the partner of vertex `i+1` of the first graph.
        mapping: Vec<u32>,
    },
    NotIsomorphicOrUnreconstructible {
        reason: RejectReason,
        #[serde(skip_serializing_if = "Option::is_none")]
        failed_at_iteration: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        failed_vertex: Option<u32>,
    },
}

/// Everything a run produced.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Outcome {
    pub version: u32,
    pub verdict: Verdict,
    pub start: StartRecord,
    pub iterations: Vec<IterationRecord>,
    /// Vertices of the first graph assigned by signature matching after
    /// the perturbation loop stopped early.
    pub completed_by_matching: Vec<u32>,
    pub wall_time_ms: u64,
}

impl Outcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self.verdict, Verdict::Isomorphic { .. })
    }

    pub fn mapping(&self) -> Option<Permutation> {
        match &self.verdict {
            Verdict::Isomorphic { mapping } => Permutation::new(mapping.clone()).ok(),
            _ => None,
        }
    }

    /// Class counts along the run: the initial one, then one per
    /// iteration.
    pub fn m_sequence(&self) -> Vec<usize> {
        std::iter::once(self.start.m_a)
            .chain(self.iterations.iter().map(|it| it.m_a))
            .collect()
    }
}

pub(crate) fn partition_snapshot(
    part: &Partition,
) -> (Vec<Vec<u32>>, Vec<(u32, u32, String)>, Option<String>) {
    let classes = part.classes.clone();
    let deltas: Vec<(u32, u32, String)> = part
        .deltas()
        .into_iter()
        .map(|(k, l, v)| (k, l, trace_decimal(&v)))
        .collect();
    let delta_min = part.min_delta().ok().map(|v| trace_decimal(&v));
    (classes, deltas, delta_min)
}

/// Renders an epsilon for the trace: decimal plus exact fraction.
pub(crate) fn epsilon_strings(eps: &BigRational) -> (String, String) {
    (trace_decimal(eps), eps.to_string())
}

/// Snapshot of scalar columns as decimal strings (test and CLI rendering).
pub fn render_columns<S: ScalarOps>(cols: &[Vec<S>], sig: u32) -> Vec<Vec<String>> {
    cols.iter()
        .map(|col| {
            col.iter()
                .map(|v| decimal_significant(&v.to_rational(), sig))
                .collect()
        })
        .collect()
}
