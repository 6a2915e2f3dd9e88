//! Graph isomorphism testing by diagonal perturbation.
//!
//! The engine works on *graph matrices*: the adjacency matrix of a simple
//! undirected graph plus a diagonal of `d_i + d` (vertex degree plus maximum
//! degree), which is symmetric, strictly diagonally dominant and positive
//! definite. Columns of the inverse matrix act as vertex signatures: two
//! vertices are interchangeable exactly when their inverse columns coincide
//! up to a permutation of components. Perturbing one diagonal entry by a
//! small `eps` separates one vertex from its similarity class while leaving
//! the rest of the classification intact, so `n` perturbations at most turn
//! the signature partition into singletons and read off a candidate
//! isomorphism, which is then verified edge-by-edge.
//!
//! Two scalar backends are provided: exact rational arithmetic (the
//! reference semantics) and a fixed-mantissa arbitrary-precision binary
//! float (the finite-precision semantics the separation bounds are sized
//! for). A brute-force oracle provides ground truth for small graphs.

pub mod bounds;
pub mod engine;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod solve;

pub use engine::{run, EngineConfig, EpsMode, Outcome, Verdict};
pub use graph::{Graph, Permutation};
pub use matrix::GraphMatrix;
