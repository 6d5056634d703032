use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RationalPolynomial;
use crate::linalg::{
    is_zero_vec, unit, vec_mat, EchelonBasis, Insertion, IntegerMatrix, Matrix, Rational, ScaledVector,
};

/// Monic polynomial q of least degree with x·q(m) = 0 (row vector x).
pub fn krylov_min_poly(x: &[Rational], m: &Matrix) -> RationalPolynomial {
    let mut basis = EchelonBasis::new(x.len());
    let mut w = x.to_vec();
    loop {
        match basis.insert(&w) {
            Insertion::Added(_) => w = vec_mat(&w, m),
            Insertion::Dependent(c) => {
                // x·m^d = Σ c_j x·m^j
                let mut coeffs: Vec<Rational> = c.into_iter().map(|a| -a).collect();
                coeffs.push(Rational::one());
                return RationalPolynomial::new(coeffs);
            }
        }
    }
}

/// x·p(m), by Horner's rule on vectors.
pub fn apply_poly(x: &[Rational], p: &RationalPolynomial, m: &Matrix) -> Vec<Rational> {
    apply_scaled(x, p, &IntegerMatrix::from_matrix(m))
}

fn apply_scaled(x: &[Rational], p: &RationalPolynomial, m: &IntegerMatrix) -> Vec<Rational> {
    // x·p(m) = Σ cᵢ·x·mⁱ
    let mut power = ScaledVector::from_rationals(x);
    let mut acc = vec![Rational::zero(); x.len()];
    for (i, c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            power = power.mul_matrix(m);
        }
        if !c.is_zero() {
            for (a, b) in acc.iter_mut().zip(power.to_rationals()) {
                *a += c * b;
            }
        }
    }
    acc
}

/// Whether p(m) is the zero matrix, checked row by row.
pub fn annihilates(p: &RationalPolynomial, m: &Matrix) -> bool {
    let fast = IntegerMatrix::from_matrix(m);
    (0..m.rows()).all(|i| is_zero_vec(&apply_scaled(&unit(m.rows(), i), p, &fast)))
}

/// Minimal polynomial: the least common multiple of the Krylov minimal
/// polynomials of the unit vectors. Vectors already killed by the running
/// multiple are skipped.
pub fn min_poly(m: &Matrix) -> RationalPolynomial {
    assert!(m.is_square(), "min_poly needs a square matrix");
    let n = m.rows();
    let fast = IntegerMatrix::from_matrix(m);
    let mut acc = RationalPolynomial::one();
    for i in 0..n {
        let e = unit(n, i);
        if is_zero_vec(&apply_scaled(&e, &acc, &fast)) {
            continue;
        }
        acc = acc.lcm(&krylov_min_poly(&e, m));
    }
    acc
}

/// det(X·I − m) by fraction-free (Bareiss) elimination over ℚ[X].
pub fn char_poly(m: &Matrix) -> RationalPolynomial {
    assert!(m.is_square(), "char_poly needs a square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<RationalPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RationalPolynomial::constant(-m.get(i, j));
                    if i == j {
                        c.add(&RationalPolynomial::from_i64(&[0, 1]))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = RationalPolynomial::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return RationalPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { RationalPolynomial::one() } else { a[n - 1][n - 1].clone() };
    if negate {
        det.scale(&-Rational::one())
    } else {
        det
    }
}

/// Rational roots with multiplicities, and the factor left after dividing
/// them out: p = remainder · Π (X − r)^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootFactorization {
    pub roots: Vec<(Rational, usize)>,
    pub remainder: RationalPolynomial,
}

impl RootFactorization {
    pub fn multiplicity(&self, root: &Rational) -> usize {
        self.roots.iter().find(|(r, _)| r == root).map_or(0, |(_, m)| *m)
    }

    /// Whether every root is rational.
    pub fn splits(&self) -> bool {
        self.remainder.degree() == 0
    }

    pub fn expand(&self) -> RationalPolynomial {
        self.roots.iter().fold(self.remainder.clone(), |acc, (r, m)| acc.mul(&RationalPolynomial::linear(r).pow(*m)))
    }
}

/// Rational roots by the rational root theorem and exact deflation. Roots
/// are listed in increasing order.
pub fn rational_roots(p: &RationalPolynomial) -> RootFactorization {
    assert!(!p.is_zero(), "the zero polynomial has every root");
    let mut rest = p.clone();
    let mut roots = Vec::new();
    let zero = Rational::zero();
    let m0 = rest.multiplicity(&zero);
    if m0 > 0 {
        rest = rest.div_rem(&RationalPolynomial::from_i64(&[0, 1]).pow(m0)).0;
        roots.push((zero, m0));
    }
    let ints = integer_coefficients(&rest);
    let lead = ints.last().expect("nonzero").abs();
    let constant = ints[0].abs();
    let mut candidates = Vec::new();
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            let r = Rational::new(num.clone(), den);
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        if rest.degree() == 0 {
            break;
        }
        if !rest.eval(&r).is_zero() {
            continue;
        }
        let m = rest.multiplicity(&r);
        rest = rest.div_rem(&RationalPolynomial::linear(&r).pow(m)).0;
        roots.push((r, m));
    }
    roots.sort();
    RootFactorization { roots, remainder: rest }
}

/// Coefficients scaled to coprime integers.
fn integer_coefficients(p: &RationalPolynomial) -> Vec<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors of n > 0 via trial division. Cofactors beyond the
/// trial bound are treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    const TRIAL: u64 = 1_000_000;
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL && BigInt::from(d) * BigInt::from(d) <= rest {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut out = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for base in &out {
            let mut x = base.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &f;
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn identity_and_jordan_block() {
        assert_eq!(min_poly(&Matrix::identity(4)), RationalPolynomial::from_i64(&[-1, 1]));
        let j = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(min_poly(&j), RationalPolynomial::from_i64(&[-2, 1]).pow(2));
        assert_eq!(char_poly(&j), RationalPolynomial::from_i64(&[-2, 1]).pow(3));
        assert!(annihilates(&min_poly(&j), &j));
        assert!(!annihilates(&RationalPolynomial::from_i64(&[-2, 1]), &j));
    }

    #[test]
    fn char_poly_with_zero_pivot() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(char_poly(&m), RationalPolynomial::from_i64(&[-1, 0, 1]));
        let n = Matrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let c = char_poly(&n);
        assert_eq!(c, RationalPolynomial::from_i64(&[3, -12, -16, 1]));
        assert!(min_poly(&n).divides(&c));
    }

    #[test]
    fn roots() {
        let roots = [rat(0), rat(1), rat(2), rat(-2)];
        let p = RationalPolynomial::from_roots(&roots);
        let f = rational_roots(&p);
        assert_eq!(f.roots, vec![(rat(-2), 1), (rat(0), 1), (rat(1), 1), (rat(2), 1)]);
        assert_eq!(f.remainder, RationalPolynomial::one());
        let g = rational_roots(&RationalPolynomial::from_i64(&[-8, 0, 1]));
        assert!(g.roots.is_empty());
        assert_eq!(g.remainder, RationalPolynomial::from_i64(&[-8, 0, 1]));
        // 6X^2 - X - 1 = (2X - 1)(3X + 1), times (X - 3)^2
        let h = RationalPolynomial::from_i64(&[-1, -1, 6]).mul(&RationalPolynomial::from_i64(&[-3, 1]).pow(2));
        let fh = rational_roots(&h);
        assert_eq!(fh.roots, vec![(ratio(-1, 3), 1), (ratio(1, 2), 1), (rat(3), 2)]);
        assert_eq!(fh.expand(), h);
    }
}
