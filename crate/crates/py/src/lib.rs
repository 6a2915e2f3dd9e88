//! Python bindings: graphs, the isomorphism engine, and the brute-force
//! oracle. Traces come back as parsed JSON records so Python callers can
//! inspect iterations without a schema dependency.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use isoperturb::engine::{self, EngineConfig, EpsMode, Outcome};
use isoperturb::graph::{
    self, emit_edge_list, emit_graph6, generate_permuted_pair, GraphKind, Permutation,
};
use isoperturb::oracle;

/// A simple undirected graph with 1-based vertices.
#[pyclass(name = "Graph", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from a vertex count and an edge list.
    #[new]
    fn new(n: u32, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        graph::Graph::new(n, edges)
            .map(|inner| PyGraph { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().collect()
    }

    fn degrees(&self) -> Vec<u32> {
        self.inner.degree_info().degrees
    }

    fn max_degree(&self) -> u32 {
        self.inner.degree_info().max_degree
    }

    /// Relabels through `mapping`: the result has edge (u, v) exactly when
    /// (mapping[u-1], mapping[v-1]) is an edge of this graph.
    fn permute(&self, mapping: Vec<u32>) -> PyResult<PyGraph> {
        let p = Permutation::new(mapping).map_err(|e| PyValueError::new_err(e.to_string()))?;
        self.inner
            .permute(&p)
            .map(|inner| PyGraph { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_edge_list(&self) -> String {
        emit_edge_list(&self.inner)
    }

    fn to_graph6(&self) -> String {
        emit_graph6(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<PyGraph> {
    graph::parse_edge_list(text)
        .map(|inner| PyGraph { inner })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn parse_graph6(text: &str) -> PyResult<PyGraph> {
    graph::parse_graph6(text)
        .map(|inner| PyGraph { inner })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn kind_from_args(
    kind: &str,
    n: Option<u32>,
    prob: Option<f64>,
    rows: Option<u32>,
    cols: Option<u32>,
) -> PyResult<GraphKind> {
    match kind {
        "complete" => Ok(GraphKind::Complete {
            n: n.ok_or_else(|| PyValueError::new_err("complete needs n"))?,
        }),
        "gnp" => Ok(GraphKind::Gnp {
            n: n.ok_or_else(|| PyValueError::new_err("gnp needs n"))?,
            prob: prob.unwrap_or(0.5),
        }),
        "torus" => Ok(GraphKind::Torus {
            rows: rows.ok_or_else(|| PyValueError::new_err("torus needs rows"))?,
            cols: cols.ok_or_else(|| PyValueError::new_err("torus needs cols"))?,
        }),
        other => Err(PyValueError::new_err(format!(
            "unknown kind {other:?}: expected complete, gnp or torus"
        ))),
    }
}

/// Generates a graph: kind is "complete", "gnp" or "torus".
#[pyfunction]
#[pyo3(signature = (kind, n=None, prob=None, rows=None, cols=None, seed=0))]
fn generate(
    kind: &str,
    n: Option<u32>,
    prob: Option<f64>,
    rows: Option<u32>,
    cols: Option<u32>,
    seed: u64,
) -> PyResult<PyGraph> {
    let kind = kind_from_args(kind, n, prob, rows, cols)?;
    graph::generate(&kind, seed)
        .map(|inner| PyGraph { inner })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Generates `(g, h, mapping)` with `h` a seeded random relabeling of `g`.
#[pyfunction]
#[pyo3(signature = (kind, n=None, prob=None, rows=None, cols=None, seed=0))]
fn generate_pair(
    kind: &str,
    n: Option<u32>,
    prob: Option<f64>,
    rows: Option<u32>,
    cols: Option<u32>,
    seed: u64,
) -> PyResult<(PyGraph, PyGraph, Vec<u32>)> {
    let kind = kind_from_args(kind, n, prob, rows, cols)?;
    let (g, h, p) =
        generate_permuted_pair(&kind, seed).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((
        PyGraph { inner: g },
        PyGraph { inner: h },
        p.into_vec(),
    ))
}

fn outcome_to_dict<'py>(py: Python<'py>, outcome: &Outcome) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("isomorphic", outcome.is_isomorphic())?;
    dict.set_item(
        "mapping",
        outcome.mapping().map(|p| p.into_vec()),
    )?;
    match &outcome.verdict {
        engine::Verdict::Isomorphic { .. } => dict.set_item("reason", py.None())?,
        engine::Verdict::NotIsomorphicOrUnreconstructible { reason, .. } => {
            dict.set_item("reason", reason.description())?
        }
    }
    dict.set_item("m_sequence", outcome.m_sequence())?;
    dict.set_item(
        "completed_by_matching",
        outcome.completed_by_matching.clone(),
    )?;
    // Full trace as plain dicts, via the serde representation.
    let json =
        serde_json::to_string(outcome).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let json_mod = py.import("json")?;
    dict.set_item("trace", json_mod.call_method1("loads", (json,))?)?;
    Ok(dict)
}

/// Runs the isomorphism test.
///
/// backend: "exact" or "bigfloat"; eps: "adaptive" or "paper".
/// Returns a dict with keys isomorphic, mapping, reason, m_sequence,
/// completed_by_matching, trace.
#[pyfunction]
#[pyo3(signature = (ga, gb, backend="exact", eps="adaptive", mantissa_bits=None))]
fn run_test<'py>(
    py: Python<'py>,
    ga: &PyGraph,
    gb: &PyGraph,
    backend: &str,
    eps: &str,
    mantissa_bits: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = EngineConfig {
        backend: match backend {
            "exact" => engine::BackendKind::Exact,
            "bigfloat" => engine::BackendKind::BigFloat,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown backend {other:?}: expected exact or bigfloat"
                )))
            }
        },
        eps_mode: match eps {
            "adaptive" => EpsMode::Adaptive,
            "paper" => EpsMode::TenthStep,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown eps mode {other:?}: expected adaptive or paper"
                )))
            }
        },
        mantissa_bits,
        sweep_policy: engine::SweepPolicy::Auto,
    };
    let outcome =
        engine::run(&ga.inner, &gb.inner, &cfg).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    outcome_to_dict(py, &outcome)
}

/// Checks the edge-preservation biconditional for a candidate mapping.
#[pyfunction]
fn verify_mapping(ga: &PyGraph, gb: &PyGraph, mapping: Vec<u32>) -> PyResult<bool> {
    let p = Permutation::new(mapping).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(engine::verify_mapping(&ga.inner, &gb.inner, &p))
}

/// Ground-truth isomorphism search (backtracking). Returns the
/// lexicographically smallest mapping, or None.
#[pyfunction]
fn brute_force_iso(ga: &PyGraph, gb: &PyGraph) -> Option<Vec<u32>> {
    oracle::brute_force_iso(&ga.inner, &gb.inner).map(|p| p.into_vec())
}

/// Exact isomorphism count (capped at 10 vertices).
#[pyfunction]
fn count_isos(ga: &PyGraph, gb: &PyGraph) -> PyResult<u64> {
    oracle::count_isos(&ga.inner, &gb.inner).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Automorphism group order (capped at 10 vertices).
#[pyfunction]
fn aut_order(g: &PyGraph) -> PyResult<u64> {
    oracle::aut_order(&g.inner).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn isoperturb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(parse_graph6, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(generate_pair, m)?)?;
    m.add_function(wrap_pyfunction!(run_test, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_iso, m)?)?;
    m.add_function(wrap_pyfunction!(count_isos, m)?)?;
    m.add_function(wrap_pyfunction!(aut_order, m)?)?;
    Ok(())
}
