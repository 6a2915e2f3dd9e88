//! Graph file loading and saving, format picked by extension.

use isoperturb::graph::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, Graph};

use std::fmt;
use std::fs;
use std::path::Path;

#[derive(Debug)]
pub enum IoError {
    Read(String, std::io::Error),
    Write(String, std::io::Error),
    UnknownExtension(String),
    Parse(String, String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Read(path, err) => write!(f, "cannot read {path}: {err}"),
            IoError::Write(path, err) => write!(f, "cannot write {path}: {err}"),
            IoError::UnknownExtension(path) => {
                write!(f, "{path}: unknown graph extension (expected .el or .g6)")
            }
            IoError::Parse(path, msg) => write!(f, "{path}: {msg}"),
        }
    }
}

impl std::error::Error for IoError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn format_of(path: &Path) -> Result<GraphFormat, IoError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("el") => Ok(GraphFormat::EdgeList),
        Some("g6") => Ok(GraphFormat::Graph6),
        _ => Err(IoError::UnknownExtension(path.display().to_string())),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, IoError> {
    let format = format_of(path)?;
    let text = fs::read_to_string(path)
        .map_err(|e| IoError::Read(path.display().to_string(), e))?;
    let parsed = match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Graph6 => {
            // One graph per line; take the first non-empty line.
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or_default();
            parse_graph6(line)
        }
    };
    parsed.map_err(|e| IoError::Parse(path.display().to_string(), e.to_string()))
}

pub fn render_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => emit_edge_list(g),
        GraphFormat::Graph6 => format!("{}\n", emit_graph6(g)),
    }
}

pub fn save_graph(g: &Graph, path: &Path) -> Result<(), IoError> {
    let format = format_of(path)?;
    fs::write(path, render_graph(g, format))
        .map_err(|e| IoError::Write(path.display().to_string(), e))
}
