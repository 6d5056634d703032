//! GraphViz export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::tuple::decode_letter;
use super::{Dfao, TupleDfa};

/// DOT drawing of a DFAO; nodes are labelled `name/output`.
pub fn dfao_to_dot(m: &Dfao) -> String {
    let mut out = String::from("digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  start [shape=point];\n  start -> q0;\n");
    for q in 0..m.state_count() {
        let _ = writeln!(out, "  q{q} [label=\"{}/{}\"];", m.label(q), m.output(q));
    }
    for q in 0..m.state_count() {
        let mut edges: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for d in 0..m.base() {
            edges.entry(m.step(q, d)).or_default().push(d.to_string());
        }
        for (r, digits) in edges {
            let _ = writeln!(out, "  q{q} -> q{r} [label=\"{}\"];", digits.join(","));
        }
    }
    out.push_str("}\n");
    out
}

/// DOT drawing of a tuple automaton. Edge labels list the tuple-letters,
/// written as digit strings in track order.
pub fn tuple_dfa_to_dot(a: &TupleDfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
    let _ = writeln!(out, "  label=\"tracks: {}\";", a.tracks().join(","));
    out.push_str("  start [shape=point];\n  start -> q0;\n");
    for s in 0..a.state_count() {
        let shape = if a.is_accepting(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{s} [shape={shape}, label=\"{s}\"];");
    }
    let tracks = a.tracks().len();
    for s in 0..a.state_count() {
        let mut edges: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for l in 0..a.letter_count() {
            let digits: String = decode_letter(a.base(), tracks, l)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(if a.base() > 10 { ":" } else { "" });
            edges.entry(a.step(s, l)).or_default().push(format!("[{digits}]"));
        }
        for (t, letters) in edges {
            let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", letters.join(" "));
        }
    }
    out.push_str("}\n");
    out
}
