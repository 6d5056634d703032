//! Reading and writing DFAOs in Walnut's word-automaton text format.
//!
//! ```text
//! msd_2
//! 0 1
//! 0 -> 0
//! 1 -> 1
//!
//! 1 0
//! ...
//! ```
//!
//! The header names the numeration system. Each block starts with a
//! `state output` line followed by one `digit -> state` line per digit.
//! The first block is the initial state.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::Dfao;
use crate::error::{Error, Result};

struct Block {
    label: i64,
    output: i64,
    line: usize,
    targets: Vec<Option<(i64, usize)>>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

/// Parses a Walnut DFAO file.
pub fn parse_dfao(text: &str) -> Result<Dfao> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let base = match header.strip_prefix("msd_") {
        Some(k) => k
            .parse::<u32>()
            .ok()
            .filter(|&k| k >= 2)
            .ok_or_else(|| syntax(header_line, format!("unknown header `{header}`")))?,
        None => return Err(syntax(header_line, format!("unknown header `{header}`"))),
    };

    let mut blocks: Vec<Block> = Vec::new();
    let mut index_of: HashMap<i64, usize> = HashMap::new();
    for (lineno, line) in lines {
        if let Some((lhs, rhs)) = line.split_once("->") {
            let block = blocks.last_mut().ok_or_else(|| syntax(lineno, "transition before any state declaration"))?;
            let digit: u32 = lhs.trim().parse().map_err(|_| syntax(lineno, format!("bad digit `{}`", lhs.trim())))?;
            let target: i64 =
                rhs.trim().parse().map_err(|_| syntax(lineno, format!("bad target state `{}`", rhs.trim())))?;
            if digit >= base {
                return Err(syntax(lineno, format!("digit {digit} out of range for base {base}")));
            }
            let slot = &mut block.targets[digit as usize];
            if slot.is_some() {
                return Err(syntax(
                    lineno,
                    format!("duplicate transition on digit {digit} from state {}", block.label),
                ));
            }
            *slot = Some((target, lineno));
        } else {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                [label, output] => label.parse::<i64>().ok().zip(output.parse::<i64>().ok()),
                _ => None,
            };
            let (label, output) =
                parsed.ok_or_else(|| syntax(lineno, format!("expected `state output`, found `{line}`")))?;
            if index_of.insert(label, blocks.len()).is_some() {
                return Err(syntax(lineno, format!("duplicate state {label}")));
            }
            blocks.push(Block { label, output, line: lineno, targets: vec![None; base as usize] });
        }
    }

    if blocks.is_empty() {
        return Err(syntax(header_line, "no states declared"));
    }

    let mut delta = Vec::with_capacity(blocks.len() * base as usize);
    for block in &blocks {
        for (digit, target) in block.targets.iter().enumerate() {
            let (label, lineno) = target.ok_or_else(|| {
                syntax(block.line, format!("state {} has no transition on digit {digit}", block.label))
            })?;
            let index = index_of
                .get(&label)
                .ok_or_else(|| syntax(lineno, format!("transition to undeclared state {label}")))?;
            delta.push(*index as u32);
        }
    }
    Dfao::with_labels(base, blocks.iter().map(|b| b.label).collect(), blocks.iter().map(|b| b.output).collect(), delta)
}

/// Writes `m` in Walnut format; parsing the result gives back `m`.
pub fn format_dfao(m: &Dfao) -> String {
    let mut out = format!("msd_{}\n", m.base());
    for q in 0..m.state_count() {
        if q > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {}", m.label(q), m.output(q));
        for d in 0..m.base() {
            let _ = writeln!(out, "{d} -> {}", m.label(m.step(q, d)));
        }
    }
    out
}
