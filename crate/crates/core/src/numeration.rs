//! Base-k words read most-significant digit first.

use std::fmt;

use crate::error::{Error, Result};

/// A word of base-k digits, most significant digit first.
///
/// Leading zeros are allowed; [`BaseKWord::canonical`] produces the
/// representation without them (the single digit `0` for zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseKWord {
    base: u32,
    digits: Vec<u32>,
}

impl BaseKWord {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(BaseKWord { base, digits })
    }

    /// Canonical representation of `n`: no leading zero, and `0` for zero.
    pub fn canonical(base: u32, n: u64) -> Self {
        assert!(base >= 2, "base must be at least 2");
        let mut digits = digits_msd(base, n);
        if digits.is_empty() {
            digits.push(0);
        }
        BaseKWord { base, digits }
    }

    /// Representation of `n` left-padded with zeros to exactly `len` digits.
    ///
    /// Panics if `n` needs more than `len` digits.
    pub fn padded(base: u32, n: u64, len: usize) -> Self {
        let digits = digits_msd(base, n);
        assert!(digits.len() <= len, "{n} does not fit in {len} base-{base} digits");
        let mut padded = vec![0; len - digits.len()];
        padded.extend(digits);
        BaseKWord { base, digits: padded }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Numeric value, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.digits.iter().try_fold(0u64, |acc, &d| acc.checked_mul(self.base as u64)?.checked_add(d as u64))
    }

    pub fn with_leading_zeros(&self, extra: usize) -> Self {
        let mut digits = vec![0; extra];
        digits.extend_from_slice(&self.digits);
        BaseKWord { base: self.base, digits }
    }
}

impl fmt::Display for BaseKWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

/// Digits of `n` msd-first with no leading zeros; empty for zero.
pub fn digits_msd(base: u32, mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let b = base as u64;
    while n > 0 {
        out.push((n % b) as u32);
        n /= b;
    }
    out.reverse();
    out
}

/// Number of digits in the canonical representation (1 for zero).
pub fn canonical_len(base: u32, n: u64) -> usize {
    digits_msd(base, n).len().max(1)
}
