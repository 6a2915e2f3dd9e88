//! Seeded graph generators for tests, hunting and benchmarks.

use super::{Graph, GraphError, Permutation};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Graph families the generator knows how to build.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    Complete { n: u32 },
    Gnp { n: u32, prob: f64 },
    /// Wraparound 4-regular grid with `rows * cols` vertices.
    Torus { rows: u32, cols: u32 },
}

/// Builds a graph of the requested kind, deterministically for a fixed seed.
pub fn generate(kind: &GraphKind, seed: u64) -> Result<Graph, GenerateError> {
    match *kind {
        GraphKind::Complete { n } => {
            if n < 1 {
                return Err(GenerateError::InvalidDimensions(
                    "complete graph needs n >= 1".into(),
                ));
            }
            let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
            Ok(Graph::new(n, edges)?)
        }
        GraphKind::Gnp { n, prob } => {
            if n < 1 {
                return Err(GenerateError::InvalidDimensions("gnp needs n >= 1".into()));
            }
            if !(0.0..=1.0).contains(&prob) {
                return Err(GenerateError::InvalidDimensions(format!(
                    "gnp probability {prob} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen::<f64>() < prob {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Graph::new(n, edges)?)
        }
        GraphKind::Torus { rows, cols } => {
            if rows < 3 || cols < 3 {
                return Err(GenerateError::InvalidDimensions(format!(
                    "torus needs rows >= 3 and cols >= 3, got {rows}x{cols}"
                )));
            }
            let vertex = |r: u32, c: u32| r * cols + c + 1;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    edges.push((vertex(r, c), vertex(r, (c + 1) % cols)));
                    edges.push((vertex(r, c), vertex((r + 1) % rows, c)));
                }
            }
            Ok(Graph::new(rows * cols, edges)?)
        }
    }
}

/// Builds a base graph and a partner obtained by relabeling it through a
/// seeded random permutation. Returns `(g, g.permute(p), p)`, so the
/// permutation is a valid mapping from the first graph onto the second.
pub fn generate_permuted_pair(
    kind: &GraphKind,
    seed: u64,
) -> Result<(Graph, Graph, Permutation), GenerateError> {
    let g = generate(kind, seed)?;
    // Independent stream for the relabeling.
    let p = Permutation::random(g.vertex_count(), seed ^ 0x9e37_79b9_7f4a_7c15);
    // permute pulls labels back through p, so p maps the ORIGINAL onto the
    // result: verify_mapping(result, g, p) would read p: V(result) -> V(g).
    // We return (g, h, p) with h = g.permute(p^-1) so that p maps g onto h.
    let h = g.permute(&p.inverse())?;
    Ok((g, h, p))
}

/// Degree-preserving random rewiring: swaps the endpoints of pairs of
/// independent edges. Usually, but not always, breaks isomorphism; use an
/// oracle to label the result.
pub fn rewire(g: &Graph, seed: u64, swaps: u32) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = g.edges().collect();
    let mut done = 0;
    let mut attempts = 0;
    while done < swaps && attempts < 100 * swaps.max(1) && edges.len() >= 2 {
        attempts += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        if a == c || a == d || b == c || b == d {
            continue;
        }
        let new1 = (a.min(d), a.max(d));
        let new2 = (c.min(b), c.max(b));
        if edges.contains(&new1) || edges.contains(&new2) {
            continue;
        }
        edges[i] = new1;
        edges[j] = new2;
        done += 1;
    }
    Graph::new(g.vertex_count(), edges).expect("rewiring preserves validity")
}
