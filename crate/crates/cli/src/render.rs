//! Human and json-lines rendering of run outcomes.

use isoperturb::engine::{Outcome, Verdict};
use isoperturb::scalar::{decimal_significant, parse_decimal};

use serde_json::{json, Value};

/// Re-renders a stored trace decimal at the presentation width of four
/// significant digits (trace strings carry six).
fn display_decimal(s: &str) -> String {
    match parse_decimal(s) {
        Some(r) => decimal_significant(&r, 4),
        None => s.to_string(),
    }
}

fn class_list(classes: &[Vec<u32>]) -> String {
    classes
        .iter()
        .map(|c| {
            let members: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", members.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn delta_table(deltas: &[(u32, u32, String)]) -> String {
    deltas
        .iter()
        .map(|(k, l, v)| format!("({k},{l}) {}", display_decimal(v)))
        .collect::<Vec<_>>()
        .join("  ")
}

pub fn verdict_line(outcome: &Outcome) -> String {
    match &outcome.verdict {
        Verdict::Isomorphic { .. } => "isomorphic".to_string(),
        Verdict::NotIsomorphicOrUnreconstructible {
            reason,
            failed_at_iteration,
            failed_vertex,
        } => {
            let mut line = format!(
                "not isomorphic or not reconstructible ({})",
                reason.description()
            );
            if let Some(j) = failed_at_iteration {
                line.push_str(&format!(" at iteration {j}"));
            }
            if let Some(v) = failed_vertex {
                line.push_str(&format!(" at vertex {v}"));
            }
            line
        }
    }
}

pub fn human_summary(outcome: &Outcome) -> String {
    let mut out = verdict_line(outcome);
    out.push('\n');
    if let Verdict::Isomorphic { mapping } = &outcome.verdict {
        let parts: Vec<String> = mapping.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("mapping: {}\n", parts.join(" ")));
    }
    out
}

pub fn human_trace(outcome: &Outcome) -> String {
    let start = &outcome.start;
    let mut out = format!(
        "n = {}, d = {}, backend = {}, eps mode = {}\n",
        start.n, start.max_degree, start.backend, start.eps_mode
    );
    if let Some(reason) = &start.pre_scheme_reject {
        out.push_str(&format!("pre-scheme reject: {reason}\n"));
        out.push_str(&human_summary(outcome));
        return out;
    }
    out.push_str(&format!("start: m_A = {}, m_B = {}\n", start.m_a, start.m_b));
    if !start.classes_a.is_empty() {
        out.push_str(&format!("  classes: {}\n", class_list(&start.classes_a)));
    }
    if !start.deltas_a.is_empty() {
        out.push_str(&format!("  delta:   {}\n", delta_table(&start.deltas_a)));
    }
    for it in &outcome.iterations {
        let tried: Vec<String> = it.candidates_tried.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "iteration {}: eps = {} ({}), tried [{}], k = {}, m_A = {}, m_B = {}, sweeps = {}\n",
            it.j,
            display_decimal(&it.epsilon),
            it.epsilon_exact,
            tried.join(" "),
            if it.k_j == 0 {
                "-".to_string()
            } else {
                it.k_j.to_string()
            },
            it.m_a,
            it.m_b,
            it.sweeps,
        ));
        out.push_str(&format!("  classes: {}\n", class_list(&it.classes_a)));
        if !it.deltas_a.is_empty() {
            out.push_str(&format!("  delta:   {}\n", delta_table(&it.deltas_a)));
        }
    }
    if !outcome.completed_by_matching.is_empty() {
        let vs: Vec<String> = outcome
            .completed_by_matching
            .iter()
            .map(|v| v.to_string())
            .collect();
        out.push_str(&format!(
            "assigned by signature matching: {}\n",
            vs.join(" ")
        ));
    }
    out.push_str(&human_summary(outcome));
    out
}

fn strip_timings(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("wall_time_ms");
            for v in map.values_mut() {
                strip_timings(v);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

/// One JSON object per line: start, iterations, matching, verdict.
/// Without `timings`, wall-clock fields are removed so output is
/// byte-stable for a fixed seed and configuration.
pub fn json_lines(outcome: &Outcome, timings: bool) -> String {
    let mut records: Vec<Value> = Vec::new();

    let mut start = serde_json::to_value(&outcome.start).expect("serializable");
    start["record"] = json!("start");
    start["version"] = json!(outcome.version);
    records.push(start);

    for it in &outcome.iterations {
        let mut rec = serde_json::to_value(it).expect("serializable");
        rec["record"] = json!("iteration");
        records.push(rec);
    }

    if !outcome.completed_by_matching.is_empty() {
        records.push(json!({
            "record": "matching",
            "vertices": outcome.completed_by_matching,
        }));
    }

    let mut verdict = serde_json::to_value(&outcome.verdict).expect("serializable");
    verdict["record"] = json!("verdict");
    verdict["wall_time_ms"] = json!(outcome.wall_time_ms);
    records.push(verdict);

    let mut out = String::new();
    for mut rec in records {
        if !timings {
            strip_timings(&mut rec);
        }
        out.push_str(&serde_json::to_string(&rec).expect("serializable"));
        out.push('\n');
    }
    out
}
