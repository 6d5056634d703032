//! Brute-force ground truth computed straight from the defining
//! recurrences and by enumeration, with no automata involved.

use crate::error::{Error, Result};

/// t₀ = 0, t₂ₙ = tₙ, t₂ₙ₊₁ = 1 − tₙ.
pub fn thue_morse(mut n: u64) -> u8 {
    let mut t = 0;
    while n > 0 {
        if n % 2 == 1 {
            t ^= 1;
        }
        n /= 2;
    }
    t
}

/// t'₀ = 1, t'₁ = 0, t'₂ₙ = 1 − t'ₙ and t'₂ₙ₊₁ = t'ₙ for n ≥ 1.
pub fn twisted_tm(mut n: u64) -> u8 {
    if n == 0 {
        return 1;
    }
    let mut flips = 0;
    while n > 1 {
        if n.is_multiple_of(2) {
            flips ^= 1;
        }
        n /= 2;
    }
    flips
}

/// The four sets A = {tₙ = 0}, B = {tₙ = 1}, C = {t'ₙ = 0}, D = {t'ₙ = 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutomaticSet {
    A,
    B,
    C,
    D,
}

impl AutomaticSet {
    pub fn contains(self, n: u64) -> bool {
        match self {
            AutomaticSet::A => thue_morse(n) == 0,
            AutomaticSet::B => thue_morse(n) == 1,
            AutomaticSet::C => twisted_tm(n) == 0,
            AutomaticSet::D => twisted_tm(n) == 1,
        }
    }

    pub fn first(self, count: usize) -> Vec<u64> {
        (0..).filter(|&n| self.contains(n)).take(count).collect()
    }
}

/// Which pairs (x, y) with x + y = n are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairOrder {
    /// R₁: all ordered pairs.
    Any,
    /// R₂: x < y.
    Less,
    /// R₃: x ≤ y.
    LessEq,
}

/// Number of pairs x + y = n with both terms in `set`.
pub fn brute_r(order: PairOrder, set: AutomaticSet, n: u64) -> u64 {
    (0..=n)
        .filter(|&x| {
            let y = n - x;
            let ordered = match order {
                PairOrder::Any => true,
                PairOrder::Less => x < y,
                PairOrder::LessEq => x <= y,
            };
            ordered && set.contains(x) && set.contains(y)
        })
        .count() as u64
}

/// rⱼ counts tuples of evil terms (t = 0), sⱼ tuples of odious ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TupleKind {
    R,
    S,
}

impl TupleKind {
    fn bit(self) -> u8 {
        match self {
            TupleKind::R => 0,
            TupleKind::S => 1,
        }
    }
}

pub const COMPOSITION_LIMIT: u128 = 100_000_000;

/// Number of compositions of n into j nonnegative parts, C(n+j−1, j−1).
pub fn composition_count(j: u32, n: u64) -> u128 {
    let mut c: u128 = 1;
    for i in 1..j as u128 {
        c = c.saturating_mul(n as u128 + i) / i;
    }
    c
}

/// Ordered j-tuples summing to n whose terms all have Thue–Morse value
/// 0 (`R`) or 1 (`S`), by enumeration with pruning.
pub fn brute_rs(j: u32, kind: TupleKind, n: u64) -> Result<u128> {
    let count = composition_count(j, n);
    if count > COMPOSITION_LIMIT {
        return Err(Error::TooExpensive { count, limit: COMPOSITION_LIMIT });
    }
    fn go(parts: u32, rest: u64, bit: u8) -> u128 {
        if parts == 1 {
            return (thue_morse(rest) == bit) as u128;
        }
        (0..=rest).filter(|&x| thue_morse(x) == bit).map(|x| go(parts - 1, rest - x, bit)).sum()
    }
    Ok(if j == 0 { (n == 0) as u128 } else { go(j, n, kind.bit()) })
}

/// rⱼ(n) or sⱼ(n) for all n ≤ n_max as a j-fold convolution of the
/// indicator sequence. Quadratic in n_max, so usable well beyond the
/// enumeration limit.
pub fn rs_table(j: u32, kind: TupleKind, n_max: u64) -> Vec<u128> {
    let len = n_max as usize + 1;
    let ind: Vec<u128> = (0..=n_max).map(|n| (thue_morse(n) == kind.bit()) as u128).collect();
    let mut acc = vec![0u128; len];
    acc[0] = 1;
    for _ in 0..j {
        let mut next = vec![0u128; len];
        for (a, &x) in acc.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (b, _) in ind[..len - a].iter().enumerate().filter(|(_, &y)| y != 0) {
                next[a + b] += x;
            }
        }
        acc = next;
    }
    acc
}
