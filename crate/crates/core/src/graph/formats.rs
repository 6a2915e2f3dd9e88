//! Edge-list and graph6 readers and writers.
//!
//! The edge-list format is line oriented: the first non-comment line is the
//! vertex count, every following line one `u v` pair; `#` starts a comment.
//! graph6 is the standard 6-bit packed upper-triangle encoding, one graph
//! per line. Both emitters produce the canonical form their parser accepts,
//! byte for byte (edges sorted lexicographically).

use super::{Graph, GraphError};

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: u32, n: u32 },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error("graph6: {0}")]
    Graph6(String),
}

/// Parses the line-oriented edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<u32> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match n {
            None => {
                n = Some(line.parse::<u32>().map_err(|_| ParseError::Malformed {
                    line: line_no,
                    msg: format!("expected vertex count, got {line:?}"),
                })?);
                if n == Some(0) {
                    return Err(ParseError::Malformed {
                        line: line_no,
                        msg: "vertex count must be positive".into(),
                    });
                }
            }
            Some(count) => {
                let mut it = line.split_whitespace();
                let (u, v) = match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => {
                        let parse = |tok: &str| {
                            tok.parse::<u32>().map_err(|_| ParseError::Malformed {
                                line: line_no,
                                msg: format!("expected vertex index, got {tok:?}"),
                            })
                        };
                        (parse(a)?, parse(b)?)
                    }
                    _ => {
                        return Err(ParseError::Malformed {
                            line: line_no,
                            msg: format!("expected \"u v\", got {line:?}"),
                        })
                    }
                };
                for w in [u, v] {
                    if w == 0 || w > count {
                        return Err(ParseError::OutOfRange {
                            line: line_no,
                            vertex: w,
                            n: count,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line: line_no,
                        vertex: u,
                    });
                }
                edges.push((u, v));
                edge_lines.push(line_no);
            }
        }
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    Graph::new(n, edges).map_err(|e| ParseError::Malformed {
        line: 0,
        msg: e.to_string(),
    })
}

/// Canonical edge-list form: header line, then edges sorted lexicographically.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const G6_BIAS: u8 = 63;
const G6_MAX_SMALL: u32 = 62;
const G6_MAX_N: u32 = 1 << 18;

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(input: &str) -> Result<Graph, ParseError> {
    let s = input
        .trim_end_matches(['\r', '\n'])
        .trim_start_matches(">>graph6<<");
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6("empty input".into()));
    }

    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(ParseError::Graph6(format!(
                "vertex counts of 2^18 and above are not supported"
            )));
        }
        if bytes.len() < 4 {
            return Err(ParseError::Graph6("truncated extended header".into()));
        }
        let mut n: u32 = 0;
        for &b in &bytes[1..4] {
            n = (n << 6) | decode_byte(b)? as u32;
        }
        (n, 4usize)
    } else {
        (decode_byte(bytes[0])? as u32, 1usize)
    };

    if n == 0 {
        return Err(ParseError::Graph6("vertex count must be positive".into()));
    }
    if n >= G6_MAX_N {
        return Err(ParseError::Graph6(format!("vertex count {n} too large")));
    }

    let bit_count = (n as usize) * (n as usize - 1) / 2;
    let byte_count = (bit_count + 5) / 6;
    if bytes.len() - pos < byte_count {
        return Err(ParseError::Graph6(format!(
            "payload truncated: need {byte_count} bytes, got {}",
            bytes.len() - pos
        )));
    }

    let mut edges = BTreeSet::new();
    let mut bit = 0usize;
    let mut current = 0u8;
    let mut remaining = 0u8;
    // Upper-triangle bits in column order: (0,1), (0,2), (1,2), (0,3), ...
    for v in 1..n {
        for u in 0..v {
            if remaining == 0 {
                current = decode_byte(bytes[pos])?;
                pos += 1;
                remaining = 6;
            }
            let is_set = current & (1 << (remaining - 1)) != 0;
            remaining -= 1;
            bit += 1;
            if is_set {
                edges.insert((u + 1, v + 1));
            }
        }
    }
    debug_assert_eq!(bit, bit_count);

    Graph::new(n, edges).map_err(|e: GraphError| ParseError::Graph6(e.to_string()))
}

fn decode_byte(b: u8) -> Result<u8, ParseError> {
    if !(63..=126).contains(&b) {
        return Err(ParseError::Graph6(format!("invalid byte {b:#x}")));
    }
    Ok(b - G6_BIAS)
}

/// Encodes a graph as one graph6 line (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= G6_MAX_SMALL {
        out.push(n as u8 + G6_BIAS);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + G6_BIAS);
        out.push(((n >> 6) & 0x3f) as u8 + G6_BIAS);
        out.push((n & 0x3f) as u8 + G6_BIAS);
    }

    let mut current = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            current <<= 1;
            if g.has_edge(u + 1, v + 1) {
                current |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(current + G6_BIAS);
                current = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        current <<= 6 - filled;
        out.push(current + G6_BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reference_edge_list() {
        let g = parse_edge_list("6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 6\n3 6\n4 5\n4 6\n5 6").unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.degree_info().degrees, vec![4, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse_edge_list("1\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_collapses_duplicates() {
        let g = parse_edge_list("3\n1 2\n1 2\n2 3").unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn parse_comments_and_blank_lines() {
        let g = parse_edge_list("# header\n\n3\n# edge\n1 3\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_errors_name_the_line() {
        match parse_edge_list("3\n1 5\n") {
            Err(ParseError::OutOfRange { line: 2, vertex: 5, n: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match parse_edge_list("3\n2 2\n") {
            Err(ParseError::SelfLoop { line: 2, vertex: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match parse_edge_list("3\n1 2 3\n") {
            Err(ParseError::Malformed { line: 2, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(parse_edge_list("# nothing\n"), Err(ParseError::MissingHeader)));
    }

    #[test]
    fn graph6_triangle() {
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(emit_graph6(&g), "Bw");
    }

    #[test]
    fn graph6_single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(emit_graph6(&g), "@");
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("\x1f").is_err());
        // Header says 5 vertices but the payload is missing.
        assert!(parse_graph6("D").is_err());
    }

    #[test]
    fn graph6_extended_header_round_trip() {
        // 100 > 62 vertices, so the 4-byte header form is required.
        let g = Graph::new(100, [(1, 2), (50, 99)]).unwrap();
        let enc = emit_graph6(&g);
        assert_eq!(enc.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn reference_graph_round_trips_both_formats() {
        let text = "6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 6\n3 6\n4 5\n4 6\n5 6\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(emit_edge_list(&g), text);
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }
}
