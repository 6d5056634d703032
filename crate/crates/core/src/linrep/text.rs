//! Plain text form of a representation:
//!
//! ```text
//! # source: n=x+y & x<y & T[x]=@0 & T[y]=@0
//! base 2
//! rank 2
//! u: 1 0
//! gamma 0:
//! 1 0
//! 0 1
//! gamma 1:
//! 1 1
//! 0 1
//! v: 0 1
//! ```
//!
//! Entries are integers or fractions `p/q`. Lines starting with `#` are
//! comments; a `# source:` comment carries the provenance of a series.

use std::fmt::Write;

use super::{LinearRepresentation, RationalSeries};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

const SOURCE: &str = "# source:";

pub fn serialize(rep: &LinearRepresentation) -> String {
    let row = |x: &[Rational]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "base {}", rep.base()).unwrap();
    writeln!(out, "rank {}", rep.rank()).unwrap();
    writeln!(out, "u: {}", row(rep.u())).unwrap();
    for (d, g) in rep.gammas().iter().enumerate() {
        writeln!(out, "gamma {d}:").unwrap();
        for i in 0..g.rows() {
            writeln!(out, "{}", row(g.row(i))).unwrap();
        }
    }
    writeln!(out, "v: {}", row(rep.v())).unwrap();
    out
}

pub fn serialize_series(series: &RationalSeries) -> String {
    let mut out = String::new();
    for line in series.provenance.lines() {
        writeln!(out, "{SOURCE} {line}").unwrap();
    }
    out + &serialize(&series.rep)
}

pub fn deserialize(text: &str) -> Result<LinearRepresentation> {
    Ok(deserialize_series(text)?.rep)
}

pub fn deserialize_series(text: &str) -> Result<RationalSeries> {
    let mut provenance = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(src) = line.strip_prefix(SOURCE) {
            provenance.push(src.trim().to_string());
        } else if !line.is_empty() && !line.starts_with('#') {
            lines.push((i + 1, line));
        }
    }
    let mut p = Parser { lines, at: 0 };
    let base: u32 = p.header("base")?;
    if base < 2 {
        return Err(p.error_prev(format!("invalid base {base}")));
    }
    let rank: usize = p.header("rank")?;
    let u = p.labelled_row("u:", rank)?;
    let mut gamma = Vec::with_capacity(base as usize);
    for d in 0..base {
        let (line, text) = p.next("gamma")?;
        if text != format!("gamma {d}:") {
            return Err(Error::Syntax { line, message: format!("expected `gamma {d}:`") });
        }
        let rows = (0..rank).map(|_| p.row(rank)).collect::<Result<Vec<_>>>()?;
        gamma.push(if rank == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) });
    }
    let v = p.labelled_row("v:", rank)?;
    if let Some(&(line, _)) = p.lines.get(p.at) {
        return Err(Error::Syntax { line, message: "trailing content".into() });
    }
    let rep = LinearRepresentation::new(base, u, gamma, v)?;
    Ok(RationalSeries::new(rep, provenance.join("\n")))
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self.lines.get(self.at).copied().ok_or_else(|| Error::Syntax {
            line: self.lines.last().map_or(1, |l| l.0),
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.at += 1;
        Ok(item)
    }

    fn error_prev(&self, message: String) -> Error {
        Error::Syntax { line: self.lines[self.at - 1].0, message }
    }

    fn header<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (line, text) = self.next(key)?;
        text.strip_prefix(key)
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| Error::Syntax { line, message: format!("expected `{key} <number>`") })
    }

    fn entries(line: usize, text: &str, len: usize) -> Result<Vec<Rational>> {
        let out = text
            .split_whitespace()
            .map(|t| t.parse::<Rational>().map_err(|_| Error::Syntax { line, message: format!("bad entry `{t}`") }))
            .collect::<Result<Vec<_>>>()?;
        if out.len() != len {
            return Err(Error::Syntax { line, message: format!("expected {len} entries, found {}", out.len()) });
        }
        Ok(out)
    }

    fn row(&mut self, len: usize) -> Result<Vec<Rational>> {
        let (line, text) = self.next("a matrix row")?;
        Self::entries(line, text, len)
    }

    fn labelled_row(&mut self, label: &str, len: usize) -> Result<Vec<Rational>> {
        let (line, text) = self.next(label)?;
        let rest =
            text.strip_prefix(label).ok_or_else(|| Error::Syntax { line, message: format!("expected `{label}`") })?;
        Self::entries(line, rest, len)
    }
}
