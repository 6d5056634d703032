//! Linear representations of rational series over base-k words.
//!
//! A representation of rank r is a triple (u, γ, v): a row vector u, one
//! r×r matrix γ(d) per digit and a column vector v, with
//! f(n) = u·γ(d₁)···γ(dₗ)·v for the digits d₁…dₗ of n.

mod extract;
mod minimize;
mod text;

pub use extract::extract;
pub use minimize::{canonical_form, minimize_rep, reduce_backward, reduce_forward, series_equal};
pub use text::{deserialize, deserialize_series, serialize, serialize_series};

use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, Matrix, Rational, ScaledVector};
use crate::numeration::{digits_msd, BaseKWord};

#[derive(Debug, Clone)]
pub struct LinearRepresentation {
    base: u32,
    u: Vec<Rational>,
    gamma: Vec<Matrix>,
    v: Vec<Rational>,
    // integer forms for evaluation, built on first use
    scaled: OnceLock<Scaled>,
}

#[derive(Debug, Clone)]
struct Scaled {
    u: ScaledVector,
    gamma: Vec<IntegerMatrix>,
    v: ScaledVector,
}

impl PartialEq for LinearRepresentation {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.u == other.u && self.gamma == other.gamma && self.v == other.v
    }
}

impl Eq for LinearRepresentation {}

impl Hash for LinearRepresentation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.base, &self.u, &self.gamma, &self.v).hash(state);
    }
}

impl LinearRepresentation {
    pub fn new(base: u32, u: Vec<Rational>, gamma: Vec<Matrix>, v: Vec<Rational>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        let r = u.len();
        if gamma.len() != base as usize {
            return Err(Error::Internal(format!("expected {base} matrices, got {}", gamma.len())));
        }
        if v.len() != r || gamma.iter().any(|g| g.rows() != r || g.cols() != r) {
            return Err(Error::Internal(format!("inconsistent dimensions for rank {r}")));
        }
        Ok(LinearRepresentation { base, u, gamma, v, scaled: OnceLock::new() })
    }

    /// The rank-0 representation of the zero series.
    pub fn zero(base: u32) -> Self {
        LinearRepresentation {
            base,
            u: Vec::new(),
            gamma: vec![Matrix::zeros(0, 0); base as usize],
            v: Vec::new(),
            scaled: OnceLock::new(),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[Rational] {
        &self.u
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn gamma(&self, digit: u32) -> &Matrix {
        &self.gamma[digit as usize]
    }

    pub fn gammas(&self) -> &[Matrix] {
        &self.gamma
    }

    fn scaled(&self) -> &Scaled {
        self.scaled.get_or_init(|| Scaled {
            u: ScaledVector::from_rationals(&self.u),
            gamma: self.gamma.iter().map(IntegerMatrix::from_matrix).collect(),
            v: ScaledVector::from_rationals(&self.v),
        })
    }

    /// u·γ(w) for the digit word `w`, in integer form.
    pub fn scaled_left(&self, digits: &[u32]) -> ScaledVector {
        digits.iter().fold(self.scaled().u.clone(), |x, &d| self.scaled_step(&x, d))
    }

    /// x·γ(d).
    pub fn scaled_step(&self, x: &ScaledVector, digit: u32) -> ScaledVector {
        x.mul_matrix(&self.scaled().gamma[digit as usize])
    }

    /// x·v.
    pub fn scaled_output(&self, x: &ScaledVector) -> Rational {
        x.dot(&self.scaled().v)
    }

    /// u·γ(w) for the digit word `w`.
    pub fn left_vector(&self, digits: &[u32]) -> Vec<Rational> {
        self.scaled_left(digits).to_rationals()
    }

    pub fn evaluate_word(&self, digits: &[u32]) -> Rational {
        if self.rank() == 0 {
            return Rational::zero();
        }
        self.scaled_output(&self.scaled_left(digits))
    }

    /// Value at `n`, read on its canonical representation.
    pub fn evaluate(&self, n: u64) -> Rational {
        self.evaluate_word(BaseKWord::canonical(self.base, n).digits())
    }

    /// Value at `n` read with `extra` additional leading zeros.
    pub fn evaluate_padded(&self, n: u64, extra: usize) -> Rational {
        self.evaluate_word(BaseKWord::canonical(self.base, n).with_leading_zeros(extra).digits())
    }

    /// Values at `from..=to`, sharing work between consecutive numbers
    /// with a common prefix.
    pub fn evaluate_range(&self, from: u64, to: u64) -> Vec<Rational> {
        if from > to {
            return Vec::new();
        }
        if self.rank() == 0 {
            return vec![Rational::zero(); (to - from + 1) as usize];
        }
        let mut prefix: Vec<u32> = Vec::new();
        // stack[i] = u·γ(prefix[..i])
        let mut stack: Vec<ScaledVector> = vec![self.scaled().u.clone()];
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        for n in from..=to {
            let mut digits = digits_msd(self.base, n);
            if digits.is_empty() {
                digits.push(0);
            }
            let common = prefix.iter().zip(&digits).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for &d in &digits[common..] {
                let next = self.scaled_step(stack.last().expect("nonempty"), d);
                stack.push(next);
            }
            prefix = digits;
            out.push(self.scaled_output(stack.last().expect("nonempty")));
        }
        out
    }

    /// Representation of n ↦ f(n) − g(n): block direct sum with the second
    /// output vector negated.
    pub fn difference(&self, other: &LinearRepresentation) -> Result<LinearRepresentation> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        let u = self.u.iter().chain(&other.u).cloned().collect();
        let v = self.v.iter().cloned().chain(other.v.iter().map(|x| -x)).collect();
        let gamma = self.gamma.iter().zip(&other.gamma).map(|(a, b)| a.direct_sum(b)).collect();
        LinearRepresentation::new(self.base, u, gamma, v)
    }

    /// The transposed triple (vᵀ, γᵀ, uᵀ); it computes the series on
    /// reversed words.
    pub fn transpose(&self) -> LinearRepresentation {
        LinearRepresentation {
            base: self.base,
            u: self.v.clone(),
            gamma: self.gamma.iter().map(Matrix::transpose).collect(),
            v: self.u.clone(),
            scaled: OnceLock::new(),
        }
    }

    /// Whether evaluation is unchanged by `extra` leading zeros for every
    /// n up to `n_max`.
    pub fn is_padding_stable(&self, n_max: u64, extra: usize) -> bool {
        (0..=n_max).all(|n| self.evaluate(n) == self.evaluate_padded(n, extra))
    }
}

/// A representation together with the text it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub rep: LinearRepresentation,
    pub provenance: String,
}

impl RationalSeries {
    pub fn new(rep: LinearRepresentation, provenance: impl Into<String>) -> Self {
        RationalSeries { rep, provenance: provenance.into() }
    }
}
