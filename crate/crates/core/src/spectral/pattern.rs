use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{mat_vec, Rational, ScaledVector};
use crate::linrep::LinearRepresentation;

/// The family of words wₜ = p · d^(t+offset) · s, defined for t with
/// t + offset ≥ 0.
///
/// Text form: whitespace separated tokens, each a digit string or a single
/// digit raised to `t`, `(t-c)` or `(t+c)`. Exactly one token must carry
/// the exponent, e.g. `1^t`, `1 0^(t-1) 1`, `1 0^t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitPattern {
    pub prefix: Vec<u32>,
    pub digit: u32,
    pub suffix: Vec<u32>,
    pub offset: i64,
}

impl DigitPattern {
    pub fn new(prefix: Vec<u32>, digit: u32, suffix: Vec<u32>, offset: i64) -> Result<Self> {
        if prefix.first() == Some(&0) {
            return Err(Error::Pattern("prefix must not start with 0".into()));
        }
        Ok(DigitPattern { prefix, digit, suffix, offset })
    }

    /// Smallest admissible t.
    pub fn t_min(&self) -> u64 {
        (-self.offset).max(0) as u64
    }

    pub fn check_base(&self, base: u32) -> Result<()> {
        match self.prefix.iter().chain([&self.digit]).chain(&self.suffix).find(|&&d| d >= base) {
            Some(&d) => Err(Error::DigitOutOfRange { digit: d, base }),
            None => Ok(()),
        }
    }

    pub fn repeats(&self, t: u64) -> Result<usize> {
        let r = t as i64 + self.offset;
        if r < 0 {
            return Err(Error::Pattern(format!("t = {t} is below the least admissible value {}", self.t_min())));
        }
        Ok(r as usize)
    }

    pub fn word(&self, t: u64) -> Result<Vec<u32>> {
        let mut w = self.prefix.clone();
        w.extend(std::iter::repeat_n(self.digit, self.repeats(t)?));
        w.extend(&self.suffix);
        Ok(w)
    }

    /// Numeric value of wₜ in base `base`.
    pub fn value(&self, base: u32, t: u64) -> Result<BigUint> {
        Ok(self.word(t)?.iter().fold(BigUint::zero(), |acc, &d| acc * base + d))
    }
}

impl FromStr for DigitPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = |tok: &str| -> Result<Vec<u32>> {
            tok.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Pattern(format!("bad digit `{c}` in `{tok}`"))))
                .collect()
        };
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        let mut repeated: Option<(u32, i64)> = None;
        for tok in s.split_whitespace() {
            let Some((head, exp)) = tok.split_once('^') else {
                let ds = digits(tok)?;
                if repeated.is_some() {
                    suffix.extend(ds)
                } else {
                    prefix.extend(ds)
                }
                continue;
            };
            if repeated.is_some() {
                return Err(Error::Pattern("more than one repeated digit".into()));
            }
            let mut head = digits(head)?;
            let d = head.pop().ok_or_else(|| Error::Pattern(format!("missing digit before `^` in `{tok}`")))?;
            prefix.extend(head);
            repeated = Some((d, parse_exponent(exp)?));
        }
        let (digit, offset) = repeated.ok_or_else(|| Error::Pattern("no repeated digit `d^t`".into()))?;
        DigitPattern::new(prefix, digit, suffix, offset)
    }
}

fn parse_exponent(exp: &str) -> Result<i64> {
    let bad = || Error::Pattern(format!("bad exponent `{exp}`; expected t, (t-c) or (t+c)"));
    if exp == "t" {
        return Ok(0);
    }
    let inner = exp.strip_prefix("(t").and_then(|e| e.strip_suffix(')')).ok_or_else(bad)?;
    let (sign, num) = if let Some(n) = inner.strip_prefix('-') {
        (-1, n)
    } else if let Some(n) = inner.strip_prefix('+') {
        (1, n)
    } else {
        return Err(bad());
    };
    Ok(sign * num.trim().parse::<i64>().map_err(|_| bad())?)
}

impl fmt::Display for DigitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let run = |ds: &[u32]| ds.iter().map(ToString::to_string).collect::<String>();
        let mut parts = Vec::new();
        if !self.prefix.is_empty() {
            parts.push(run(&self.prefix));
        }
        parts.push(match self.offset {
            0 => format!("{}^t", self.digit),
            o if o < 0 => format!("{}^(t-{})", self.digit, -o),
            o => format!("{}^(t+{o})", self.digit),
        });
        if !self.suffix.is_empty() {
            parts.push(run(&self.suffix));
        }
        f.write_str(&parts.join(" "))
    }
}

/// u·γ(p)·γ(d)^(t+offset)·γ(s)·v by repeated vector products.
pub fn pattern_value(rep: &LinearRepresentation, pat: &DigitPattern, t: u64) -> Result<Rational> {
    pat.check_base(rep.base())?;
    Ok(rep.evaluate_word(&pat.word(t)?))
}

/// Values for t = t_from..=t_to, sharing the growing power of γ(d).
pub fn pattern_values(rep: &LinearRepresentation, pat: &DigitPattern, t_from: u64, t_to: u64) -> Result<Vec<Rational>> {
    pat.check_base(rep.base())?;
    pat.repeats(t_from)?;
    if t_from > t_to {
        return Ok(Vec::new());
    }
    if rep.rank() == 0 {
        return Ok(vec![Rational::zero(); (t_to - t_from + 1) as usize]);
    }
    let tail = pat.suffix.iter().rev().fold(rep.v().to_vec(), |y, &d| mat_vec(rep.gamma(d), &y));
    let tail = ScaledVector::from_rationals(&tail);
    let mut head = pat.prefix.clone();
    head.extend(std::iter::repeat_n(pat.digit, pat.repeats(t_from)?));
    let mut x = rep.scaled_left(&head);
    let mut out = Vec::with_capacity((t_to - t_from + 1) as usize);
    for t in t_from..=t_to {
        if t > t_from {
            x = rep.scaled_step(&x, pat.digit);
        }
        out.push(x.dot(&tail));
    }
    Ok(out)
}
