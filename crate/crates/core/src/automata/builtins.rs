//! Primitive automata the formula compiler is assembled from.
//!
//! Each builder takes variable names rather than track positions; a name may
//! appear in several roles (`x + x = y`), in which case the roles share a
//! track.

use super::{Dfao, TupleDfa};
use crate::error::Result;
use crate::logic::Rel;
use crate::numeration::digits_msd;

fn track_set(names: &[&str]) -> Vec<String> {
    let mut tracks: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    tracks.sort();
    tracks.dedup();
    tracks
}

fn position(tracks: &[String], name: &str) -> usize {
    tracks.iter().position(|t| t == name).expect("track present")
}

/// The relation `x + y = z`, msd-first.
///
/// After a prefix, let d = x + y - z on the prefix values. Reading the
/// next digits gives d' = k*d + x_i + y_i - z_i. With L digits remaining
/// the suffixes contribute s in [-(k^L - 1), 2(k^L - 1)] and acceptance
/// needs d*k^L + s = 0, which is only possible for d in {-1, 0}. Any other
/// deficit is sent to the dead state.
pub fn addition(base: u32, x: &str, y: &str, z: &str) -> Result<TupleDfa> {
    const ZERO: u32 = 0;
    const MINUS_ONE: u32 = 1;
    const DEAD: u32 = 2;
    let tracks = track_set(&[x, y, z]);
    let (px, py, pz) = (position(&tracks, x), position(&tracks, y), position(&tracks, z));
    let k = base as i64;
    TupleDfa::from_fn(
        base,
        tracks,
        |s| s == ZERO,
        |s, digits| {
            let d = match s {
                ZERO => 0,
                MINUS_ONE => -1,
                _ => return DEAD,
            };
            let next = k * d + digits[px] as i64 + digits[py] as i64 - digits[pz] as i64;
            match next {
                0 => ZERO,
                -1 => MINUS_ONE,
                _ => DEAD,
            }
        },
    )
}

/// The comparison `x rel y`, msd-first: the first differing digit decides.
pub fn comparison(base: u32, x: &str, rel: Rel, y: &str) -> Result<TupleDfa> {
    const UNDECIDED: u32 = 0;
    const LESS: u32 = 1;
    const GREATER: u32 = 2;
    let tracks = track_set(&[x, y]);
    let (px, py) = (position(&tracks, x), position(&tracks, y));
    TupleDfa::from_fn(
        base,
        tracks,
        |s| {
            let ord = match s {
                UNDECIDED => std::cmp::Ordering::Equal,
                LESS => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            rel.holds(ord)
        },
        |s, digits| {
            if s != UNDECIDED {
                return s;
            }
            match digits[px].cmp(&digits[py]) {
                std::cmp::Ordering::Equal => UNDECIDED,
                std::cmp::Ordering::Less => LESS,
                std::cmp::Ordering::Greater => GREATER,
            }
        },
    )
}

/// Accepts every zero-padded representation of the constant `c` on `var`.
pub fn constant(base: u32, var: &str, c: u64) -> Result<TupleDfa> {
    let digits = digits_msd(base, c);
    let len = digits.len() as u32;
    let dead = len + 1;
    TupleDfa::from_fn(
        base,
        vec![var.to_string()],
        |s| s == len,
        |s, d| {
            let d = d[0];
            if s == 0 && d == 0 {
                0
            } else if s < len && d == digits[s as usize] {
                s + 1
            } else {
                dead
            }
        },
    )
}

/// The set `{ x : seq[x] = value }` on the single track `var`.
///
/// An extra initial state stands for "only zeros read so far", so the
/// result honours the padding convention even for a DFAO whose initial
/// state is not fixed by the digit 0.
pub fn sequence_preimage(seq: &Dfao, var: &str, value: i64) -> Result<TupleDfa> {
    // state 0 = only zeros read so far, state q + 1 = DFAO state q
    let zero_output = seq.output(seq.step(0, 0));
    TupleDfa::from_fn(
        seq.base(),
        vec![var.to_string()],
        |s| if s == 0 { zero_output == value } else { seq.output(s as usize - 1) == value },
        |s, d| {
            let d = d[0];
            match s {
                0 if d == 0 => 0,
                0 => seq.step(0, d) as u32 + 1,
                q => seq.step(q as usize - 1, d) as u32 + 1,
            }
        },
    )
}
