//! Graph representation, parsing, generation and permutation utilities.
//!
//! Vertices are 1-based in every public interface and in all trace output;
//! adjacency is stored as a sorted set of unordered pairs `(u, v)` with
//! `u < v`.

mod formats;
mod generate;
mod permutation;

pub use formats::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, ParseError};
pub use generate::{generate, generate_permuted_pair, rewire, GraphKind};
pub use permutation::Permutation;

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be positive")]
    EmptyVertexSet,
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(u32, u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("permutation has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("map is not a bijection: value {0} repeated or missing")]
    NotBijective(u32),
}

/// A simple undirected unweighted graph: a vertex count and an edge set.
///
/// Self-loops and duplicate edges are rejected at construction; edges are
/// stored with their endpoints ordered, so symmetry holds by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates.
    pub fn new<I>(n: u32, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as ordered pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbor lists indexed by vertex (1-based; index 0 is unused).
    pub fn neighbor_lists(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let mut degrees = vec![0u32; self.n as usize];
        for &(u, v) in &self.edges {
            degrees[u as usize - 1] += 1;
            degrees[v as usize - 1] += 1;
        }
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        DegreeInfo {
            degrees,
            max_degree,
        }
    }

    /// Relabels the graph through `p`: the result has edge `(u, v)` exactly
    /// when `(p(u), p(v))` is an edge of `self`.
    ///
    /// With this convention `p` is an isomorphism from the result onto
    /// `self`, and `verify_mapping(a, b, p)` is equivalent to
    /// `a == b.permute(p)`.
    pub fn permute(&self, p: &Permutation) -> Result<Graph, GraphError> {
        if p.len() != self.n as usize {
            return Err(GraphError::LengthMismatch {
                expected: self.n as usize,
                got: p.len(),
            });
        }
        let mut edges = BTreeSet::new();
        let inv = p.inverse();
        for &(u, v) in &self.edges {
            let (a, b) = (inv.image(u), inv.image(v));
            edges.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n: self.n, edges })
    }
}

/// Per-vertex degrees together with the maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    /// Degree of each vertex, indexed from vertex 1 at position 0.
    pub degrees: Vec<u32>,
    /// Maximum over `degrees` (0 for an edgeless graph).
    pub max_degree: u32,
}

impl DegreeInfo {
    /// Degree sequence in ascending order, for quick-reject comparisons.
    pub fn sorted(&self) -> Vec<u32> {
        let mut s = self.degrees.clone();
        s.sort_unstable();
        s
    }
}
