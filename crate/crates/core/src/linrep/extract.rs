use num_traits::{One, Zero};

use super::LinearRepresentation;
use crate::automata::{decode_letter, TupleDfa};
use crate::error::{Error, Result};
use crate::linalg::{unit, vec_mat, zeros, Matrix, Rational};

/// Counting representation of an automaton with respect to `index_var`.
///
/// The basis is the automaton's live states (the sink contributes nothing
/// and is dropped). γ(d)[p][q] counts the letters whose `index_var` digit is
/// d and which lead from p to q; v marks the accepting states. So u·γ(x)·v
/// counts the accepted words that spell x on the index track.
///
/// When the number of solutions for each index value is finite, the
/// initial vector is replaced by its limit under γ(0): reading enough
/// leading zeros lets every solution tuple fit, so the series counts all
/// solutions and is unchanged by leading zeros. When the counts are
/// unbounded no limit exists and the plain initial indicator is kept; the
/// series then counts tuples that fit in the length of the word read.
pub fn extract(a: &TupleDfa, index_var: &str) -> Result<LinearRepresentation> {
    let pos =
        a.tracks().iter().position(|t| t == index_var).ok_or_else(|| Error::UnknownTrack(index_var.to_string()))?;
    let base = a.base();
    let live = a.live_states();
    let mut index = vec![usize::MAX; a.state_count()];
    let mut rank = 0;
    for (s, &l) in live.iter().enumerate() {
        if l {
            index[s] = rank;
            rank += 1;
        }
    }
    if rank == 0 {
        return Ok(LinearRepresentation::zero(base));
    }

    let tracks = a.tracks().len();
    let digit_of: Vec<usize> = (0..a.letter_count()).map(|l| decode_letter(base, tracks, l)[pos] as usize).collect();
    let mut counts = vec![vec![0u64; rank * rank]; base as usize];
    for s in (0..a.state_count()).filter(|&s| live[s]) {
        for (l, &d) in digit_of.iter().enumerate() {
            let t = a.step(s, l);
            if live[t] {
                counts[d][index[s] * rank + index[t]] += 1;
            }
        }
    }
    let gamma: Vec<Matrix> = counts
        .into_iter()
        .map(|c| {
            Matrix::from_rows(
                c.chunks(rank).map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
            )
        })
        .collect();
    let v: Vec<Rational> = (0..a.state_count())
        .filter(|&s| live[s])
        .map(|s| if a.is_accepting(s) { Rational::one() } else { Rational::zero() })
        .collect();
    let u = if live[0] { unit(rank, index[0]) } else { zeros(rank) };
    let u = stabilize(u, &gamma[0], rank + 2);
    LinearRepresentation::new(base, u, gamma, v)
}

/// Iterates x ↦ x·γ(0) until it is fixed. Entries are path counts that only
/// grow, and a count that keeps growing past the number of states can be
/// pumped forever, so `limit` iterations suffice when a fixpoint exists.
fn stabilize(u: Vec<Rational>, zero: &Matrix, limit: usize) -> Vec<Rational> {
    let mut x = u.clone();
    for _ in 0..limit {
        let next = vec_mat(&x, zero);
        if next == x {
            return x;
        }
        x = next;
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::logic::{compile, parse_formula, SequenceBinding};

    fn rep_of(formula: &str) -> LinearRepresentation {
        let a = compile(&parse_formula(formula).unwrap(), &SequenceBinding::builtin()).unwrap();
        extract(&a, "n").unwrap()
    }

    #[test]
    fn r2a_values() {
        let rep = rep_of("n=x+y & x<y & T[x]=@0 & T[y]=@0");
        assert_eq!(rep.rank(), 12);
        assert_eq!(rep.evaluate(9), rat(2));
        assert_eq!(rep.evaluate(1), rat(0));
        assert_eq!(rep.evaluate(0), rat(0));
    }

    #[test]
    fn universal_counts_grow_with_length() {
        let a = TupleDfa::universal(2, vec!["n".into(), "x".into()]);
        let rep = extract(&a, "n").unwrap();
        assert_eq!(rep.rank(), 1);
        assert_eq!(rep.gamma(0), &Matrix::from_i64(&[&[2]]));
        assert_eq!(rep.gamma(1), &Matrix::from_i64(&[&[2]]));
        // three digits: all x < 8
        assert_eq!(rep.evaluate(5), rat(8));
        assert_eq!(rep.evaluate_padded(5, 1), rat(16));
    }

    #[test]
    fn shifted_count_includes_long_solutions() {
        // n = 1: the pair (0, 2) needs two digits
        let rep = rep_of("n+1=x+y & x<=y & TT[x]=@1 & TT[y]=@1");
        assert_eq!(rep.rank(), 20);
        assert_eq!(rep.evaluate(1), rat(1));
        assert!(rep.is_padding_stable(300, 3));
    }

    #[test]
    fn unknown_index_track() {
        let a = TupleDfa::universal(2, vec!["x".into()]);
        assert_eq!(extract(&a, "n").unwrap_err(), Error::UnknownTrack("n".into()));
    }

    #[test]
    fn empty_language_gives_zero_series() {
        let a = TupleDfa::empty(2, vec!["n".into()]);
        assert_eq!(extract(&a, "n").unwrap().rank(), 0);
    }
}
