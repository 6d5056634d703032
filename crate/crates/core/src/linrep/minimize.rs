use std::collections::VecDeque;

use super::LinearRepresentation;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, unit, vec_mat, EchelonBasis, Insertion, Matrix, Rational};

/// Restricts to the span of the reachable row vectors u·γ(w).
///
/// Words are explored breadth first in length-lexicographic order and only
/// the independent vectors are kept and extended; those vectors p₀, p₁, …
/// become the new basis. In it u is e₀, the entry vᵢ is the series value
/// p_i·v, and row i of γ(d) holds the coordinates of p_i·γ(d).
pub fn reduce_forward(rep: &LinearRepresentation) -> LinearRepresentation {
    let base = rep.base();
    if rep.rank() == 0 || is_zero_vec(rep.u()) {
        return LinearRepresentation::zero(base);
    }
    let mut basis = EchelonBasis::new(rep.rank());
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    let mut queue = VecDeque::new();
    basis.insert(rep.u());
    kept.push(rep.u().to_vec());
    queue.push_back(0);
    // images[i][d] = coordinates of p_i·γ(d) once all of p is known
    let mut pending: Vec<Vec<Vec<Rational>>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let mut images = Vec::with_capacity(base as usize);
        for d in 0..base {
            let w = vec_mat(&kept[i], rep.gamma(d));
            if let Insertion::Added(j) = basis.insert(&w) {
                kept.push(w.clone());
                queue.push_back(j);
            }
            images.push(w);
        }
        pending.push(images);
    }
    let r = kept.len();
    let gamma = (0..base as usize)
        .map(|d| {
            Matrix::from_rows(
                pending
                    .iter()
                    .map(|images| {
                        let mut c = basis.coordinates(&images[d]).expect("image lies in the reachable span");
                        c.resize(r, Rational::default());
                        c
                    })
                    .collect(),
            )
        })
        .collect();
    let v = kept.iter().map(|p| dot(p, rep.v())).collect();
    LinearRepresentation::new(base, unit(r, 0), gamma, v).expect("dimensions agree by construction")
}

/// The forward reduction of the transposed representation, transposed back:
/// restricts to the span of the column vectors γ(w)·v.
pub fn reduce_backward(rep: &LinearRepresentation) -> LinearRepresentation {
    reduce_forward(&rep.transpose()).transpose()
}

/// A representation of least rank computing the same series.
pub fn minimize_rep(rep: &LinearRepresentation) -> LinearRepresentation {
    reduce_backward(&reduce_forward(rep))
}

/// Basis-independent form: the minimal representation expressed in the
/// basis of length-lex least independent prefix vectors. Two series are
/// equal exactly when their canonical forms are identical.
pub fn canonical_form(rep: &LinearRepresentation) -> LinearRepresentation {
    reduce_forward(&minimize_rep(rep))
}

/// Exact equality of the series, decided by minimizing the difference.
/// The answer is cross-checked against canonical form comparison.
pub fn series_equal(a: &LinearRepresentation, b: &LinearRepresentation) -> Result<bool> {
    let by_difference = minimize_rep(&a.difference(b)?).rank() == 0;
    let by_canonical = canonical_form(a) == canonical_form(b);
    if by_difference != by_canonical {
        return Err(Error::Internal("difference rank and canonical forms disagree".into()));
    }
    Ok(by_difference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn rep(u: &[i64], g0: &[&[i64]], g1: &[&[i64]], v: &[i64]) -> LinearRepresentation {
        let vec = |x: &[i64]| x.iter().map(|&a| rat(a)).collect();
        LinearRepresentation::new(2, vec(u), vec![Matrix::from_i64(g0), Matrix::from_i64(g1)], vec(v)).unwrap()
    }

    // number of 1 digits, as a rank-2 representation
    fn popcount() -> LinearRepresentation {
        rep(&[1, 0], &[&[1, 0], &[0, 1]], &[&[1, 1], &[0, 1]], &[0, 1])
    }

    #[test]
    fn redundant_copy_collapses() {
        let p = popcount();
        let doubled = rep(
            &[1, 0, 0, 0],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]],
            &[0, 1, 0, 5],
        );
        let m = minimize_rep(&doubled);
        assert_eq!(m.rank(), 2);
        for n in 0..64 {
            assert_eq!(m.evaluate(n), p.evaluate(n));
        }
        assert!(series_equal(&doubled, &p).unwrap());
        assert_eq!(canonical_form(&doubled), canonical_form(&p));
    }

    #[test]
    fn different_series_are_unequal() {
        let p = popcount();
        let q = rep(&[1, 0], &[&[1, 0], &[0, 1]], &[&[1, 2], &[0, 1]], &[0, 1]);
        assert!(!series_equal(&p, &q).unwrap());
        assert_eq!(minimize_rep(&p.difference(&p).unwrap()).rank(), 0);
    }

    #[test]
    fn zero_series() {
        let z = rep(&[1, 0], &[&[1, 0], &[0, 1]], &[&[1, 1], &[0, 1]], &[0, 0]);
        assert_eq!(minimize_rep(&z).rank(), 0);
        assert!(series_equal(&z, &LinearRepresentation::zero(2)).unwrap());
    }

    #[test]
    fn canonical_values_are_prefix_values() {
        let c = canonical_form(&popcount());
        // prefixes ε and 1
        assert_eq!(c.u(), &[rat(1), rat(0)]);
        assert_eq!(c.v(), &[rat(0), rat(1)]);
    }
}
