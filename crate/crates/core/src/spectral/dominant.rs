use num_traits::{Pow, Signed, ToPrimitive, Zero};

use super::{krylov_min_poly, pattern_values, DigitPattern, RationalPolynomial};
use crate::error::{Error, Result};
use crate::linalg::{ratio, Rational};
use crate::linrep::LinearRepresentation;

/// One row of the ratio table: aₜ / rootᵗ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub t: u64,
    pub value: Rational,
    pub ratio: Rational,
}

impl RatioRow {
    pub fn decimal(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantAnalysis {
    pub root: Rational,
    pub table: Vec<RatioRow>,
    /// The last five ratios agree pairwise to relative difference < 10⁻³.
    pub stabilized: bool,
    /// Least sampled t from which every sampled value is positive.
    pub n0: Option<u64>,
    /// Exact coefficient of rootᵗ when root is a simple root of the
    /// sequence's recurrence (zero when it is not a root at all).
    pub coefficient: Option<Rational>,
}

impl DominantAnalysis {
    pub fn last_ratio(&self) -> Option<&Rational> {
        self.table.last().map(|r| &r.ratio)
    }
}

const STABLE_WINDOW: usize = 5;

fn close(a: &Rational, b: &Rational) -> bool {
    let bound = a.abs().max(b.abs()) * ratio(1, 1000);
    a == b || (a - b).abs() < bound
}

/// Exact ratios aₜ/rootᵗ for t up to `t_max` along `pat`, positivity
/// threshold and the exact dominant coefficient.
pub fn dominant_ratio(
    rep: &LinearRepresentation,
    pat: &DigitPattern,
    root: &Rational,
    t_max: u64,
) -> Result<DominantAnalysis> {
    if root.is_zero() {
        return Err(Error::Pattern("dominant root must be nonzero".into()));
    }
    pat.check_base(rep.base())?;
    let t_min = pat.t_min();
    let recurrence = if rep.rank() == 0 {
        RationalPolynomial::one()
    } else {
        krylov_min_poly(&rep.left_vector(&pat.prefix), rep.gamma(pat.digit))
    };
    let zero_mult = recurrence.multiplicity(&Rational::zero()) as i64;
    let t0 = t_min.max((zero_mult - pat.offset).max(0) as u64);
    let d = recurrence.degree() as u64;
    let last = t_max.max(t0 + d);
    let values = pattern_values(rep, pat, t_min, last)?;
    let at = |t: u64| &values[(t - t_min) as usize];

    let table: Vec<RatioRow> = (t_min..=t_max)
        .map(|t| RatioRow { t, value: at(t).clone(), ratio: at(t) / Pow::pow(root, t as u32) })
        .collect();
    let stabilized = table.len() >= STABLE_WINDOW && {
        let tail = &table[table.len() - STABLE_WINDOW..];
        tail.iter().all(|a| tail.iter().all(|b| close(&a.ratio, &b.ratio)))
    };
    let n0 = match table.iter().rposition(|r| !r.value.is_positive()) {
        None if !table.is_empty() => Some(t_min),
        Some(i) if i + 1 < table.len() => Some(table[i + 1].t),
        _ => None,
    };

    // With q = (X − root)·q', applying q'(E) kills every other component,
    // leaving c·q'(root)·rootᵗ.
    let coefficient = match recurrence.multiplicity(root) {
        0 => Some(Rational::zero()),
        1 => {
            let reduced = recurrence.div_rem(&RationalPolynomial::linear(root)).0;
            let applied =
                reduced.coeffs().iter().enumerate().fold(Rational::zero(), |acc, (i, c)| acc + c * at(t0 + i as u64));
            Some(applied / (reduced.eval(root) * Pow::pow(root, t0 as u32)))
        }
        _ => None,
    };
    Ok(DominantAnalysis { root: root.clone(), table, stabilized, n0, coefficient })
}

/// All n in [from, to] with f(n) ≥ f(n+1).
pub fn monotonicity_scan(rep: &LinearRepresentation, from: u64, to: u64) -> Vec<u64> {
    if from > to {
        return Vec::new();
    }
    let values = rep.evaluate_range(from, to + 1);
    values.windows(2).enumerate().filter(|(_, w)| w[0] >= w[1]).map(|(i, _)| from + i as u64).collect()
}
