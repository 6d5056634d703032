use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{krylov_min_poly, pattern_values, rational_roots, DigitPattern, RationalPolynomial, RootFactorization};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Rational};
use crate::linrep::LinearRepresentation;

/// coeff · t^power · root^t
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormTerm {
    pub coeff: Rational,
    pub root: Rational,
    pub power: usize,
}

impl ClosedFormTerm {
    pub fn eval(&self, t: u64) -> Rational {
        let tp: Rational = Rational::from_integer(BigInt::from(t)).pow(self.power as i32);
        &self.coeff * tp * Pow::pow(&self.root, t as u32)
    }
}

/// Values aₜ of a representation along a digit pattern.
///
/// The sequence obeys the linear recurrence `recurrence` (in the shift
/// operator) from `t_min` on, and `initial` holds a_{t_min}, … enough to
/// run it. When every nonzero root is rational, `terms` gives an explicit
/// form valid for t ≥ t0; values for t_min ≤ t < t0 are in `exceptions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub pattern: DigitPattern,
    pub recurrence: RationalPolynomial,
    pub roots: RootFactorization,
    pub t_min: u64,
    pub t0: u64,
    pub initial: Vec<Rational>,
    pub exceptions: Vec<(u64, Rational)>,
    pub terms: Option<Vec<ClosedFormTerm>>,
}

impl ClosedForm {
    pub fn eval(&self, t: u64) -> Option<Rational> {
        if t < self.t_min {
            return None;
        }
        if let Some((_, v)) = self.exceptions.iter().find(|(s, _)| *s == t) {
            return Some(v.clone());
        }
        match &self.terms {
            Some(terms) => Some(terms.iter().fold(Rational::zero(), |acc, term| acc + term.eval(t))),
            None => Some(self.run_recurrence(t)),
        }
    }

    fn run_recurrence(&self, t: u64) -> Rational {
        let d = self.recurrence.degree();
        let i = (t - self.t_min) as usize;
        if i < self.initial.len() {
            return self.initial[i].clone();
        }
        let q = self.recurrence.coeffs();
        let mut window: Vec<Rational> = self.initial[self.initial.len() - d..].to_vec();
        for _ in self.initial.len()..=i {
            let next = -(0..d).fold(Rational::zero(), |acc, j| acc + &q[j] * &window[j]);
            window.remove(0);
            window.push(next);
        }
        window.pop().expect("degree is positive past the initial values")
    }

    /// Coefficient of root^t (power 0), if the form is explicit.
    pub fn coefficient(&self, root: &Rational) -> Option<Rational> {
        let terms = self.terms.as_ref()?;
        Some(terms.iter().find(|t| &t.root == root && t.power == 0).map_or_else(Rational::zero, |t| t.coeff.clone()))
    }
}

/// Fits aₜ = Σ c·tʲ·rᵗ along `pat` exactly.
///
/// The recurrence is the minimal polynomial of u·γ(p) under γ(d). A root 0
/// of multiplicity m only affects the first m repetitions, so those values
/// become exceptions. The coefficients come from a square generalized
/// Vandermonde system and are checked on twice as many further values.
pub fn fit_closed_form(rep: &LinearRepresentation, pat: &DigitPattern) -> Result<ClosedForm> {
    pat.check_base(rep.base())?;
    let t_min = pat.t_min();
    let x0 = rep.left_vector(&pat.prefix);
    let recurrence =
        if rep.rank() == 0 { RationalPolynomial::one() } else { krylov_min_poly(&x0, rep.gamma(pat.digit)) };
    let roots = rational_roots(&recurrence);
    let zero_mult = roots.multiplicity(&Rational::zero()) as i64;
    let t0 = t_min.max((zero_mult - pat.offset).max(0) as u64);
    let d = recurrence.degree() as u64;

    if !roots.splits() {
        let initial = pattern_values(rep, pat, t_min, t_min + d.max(1) - 1)?;
        return Ok(ClosedForm {
            pattern: pat.clone(),
            recurrence,
            roots,
            t_min,
            t0: t_min,
            initial,
            exceptions: Vec::new(),
            terms: None,
        });
    }

    let unknowns: Vec<(Rational, usize)> = roots
        .roots
        .iter()
        .filter(|(r, _)| !r.is_zero())
        .flat_map(|(r, m)| (0..*m).map(move |j| (r.clone(), j)))
        .collect();
    let n = unknowns.len() as u64;
    let checks = (2 * n).max(2);
    let values = pattern_values(rep, pat, t_min, t0 + n + checks - 1)?;
    let at = |t: u64| &values[(t - t_min) as usize];

    let coeffs = if n == 0 {
        Vec::new()
    } else {
        let rows = (t0..t0 + n)
            .map(|t| {
                unknowns
                    .iter()
                    .map(|(r, j)| ClosedFormTerm { coeff: Rational::one(), root: r.clone(), power: *j }.eval(t))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = (t0..t0 + n).map(|t| at(t).clone()).collect();
        solve(&Matrix::from_rows(rows), &rhs).ok_or_else(|| Error::Internal("singular Vandermonde system".into()))?
    };
    let terms: Vec<ClosedFormTerm> =
        unknowns.into_iter().zip(coeffs).map(|((root, power), coeff)| ClosedFormTerm { coeff, root, power }).collect();
    let form = ClosedForm {
        pattern: pat.clone(),
        recurrence,
        roots,
        t_min,
        t0,
        initial: values[..d.max(1) as usize].to_vec(),
        exceptions: (t_min..t0).map(|t| (t, at(t).clone())).collect(),
        terms: Some(terms),
    };
    for t in t0 + n..t0 + n + checks {
        if form.eval(t).as_ref() != Some(at(t)) {
            return Err(Error::Verification(t));
        }
    }
    Ok(form)
}

fn fmt_root_power(root: &Rational) -> String {
    if root.is_negative() || !root.is_integer() {
        format!("({root})^t")
    } else {
        format!("{root}^t")
    }
}

impl fmt::Display for ClosedFormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if !self.coeff.is_one() {
            factors.push(self.coeff.to_string());
        }
        match self.power {
            0 => {}
            1 => factors.push("t".into()),
            p => factors.push(format!("t^{p}")),
        }
        if !self.root.is_one() {
            factors.push(fmt_root_power(&self.root));
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        f.write_str(&factors.join("*"))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(terms) = &self.terms else {
            return write!(f, "recurrence {} from t = {}", self.recurrence, self.t_min);
        };
        let shown: Vec<String> = terms.iter().filter(|t| !t.coeff.is_zero()).map(ToString::to_string).collect();
        let body = if shown.is_empty() { "0".to_string() } else { shown.join(" + ").replace("+ -", "- ") };
        write!(f, "{body} for t >= {}", self.t0)?;
        for (t, v) in &self.exceptions {
            write!(f, "; {v} at t = {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn rep(u: &[i64], g0: &[&[i64]], g1: &[&[i64]], v: &[i64]) -> LinearRepresentation {
        let vec = |x: &[i64]| x.iter().map(|&a| rat(a)).collect();
        LinearRepresentation::new(2, vec(u), vec![Matrix::from_i64(g0), Matrix::from_i64(g1)], vec(v)).unwrap()
    }

    #[test]
    fn constant_series() {
        let r = rep(&[1, 0], &[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]], &[3, 5]);
        let f = fit_closed_form(&r, &"1^t".parse().unwrap()).unwrap();
        assert_eq!(f.terms.as_ref().unwrap(), &vec![ClosedFormTerm { coeff: rat(3), root: rat(1), power: 0 }]);
        assert_eq!(f.to_string(), "3 for t >= 0");
    }

    #[test]
    fn popcount_is_linear_in_t() {
        let r = rep(&[1, 0], &[&[1, 0], &[0, 1]], &[&[1, 1], &[0, 1]], &[0, 1]);
        let f = fit_closed_form(&r, &"1^t".parse().unwrap()).unwrap();
        for t in 0..20 {
            assert_eq!(f.eval(t), Some(rat(t as i64)));
        }
        assert_eq!(f.to_string(), "t for t >= 0");
    }

    #[test]
    fn irrational_roots_give_recurrence() {
        // a_t = u·m^t·v with m² = 2
        let r = rep(&[1, 0], &[&[0, 1], &[2, 0]], &[&[0, 1], &[2, 0]], &[1, 0]);
        let f = fit_closed_form(&r, &"1 0^t".parse().unwrap()).unwrap();
        assert!(f.terms.is_none());
        assert_eq!(f.recurrence, RationalPolynomial::from_i64(&[-2, 0, 1]));
        let pat: DigitPattern = "1 0^t".parse().unwrap();
        for t in 0..12 {
            assert_eq!(f.eval(t), Some(r.evaluate_word(&pat.word(t).unwrap())));
        }
    }

    #[test]
    fn term_display() {
        let t = ClosedFormTerm { coeff: ratio(-1, 24), root: rat(-2), power: 0 };
        assert_eq!(t.to_string(), "-1/24*(-2)^t");
        assert_eq!(t.eval(3), ratio(1, 3));
    }
}
