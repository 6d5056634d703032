//! Exact rational vectors and matrices.
//!
//! Elimination always pivots on the lowest-index nonzero entry; no
//! magnitude pivoting is needed over ℚ and the choice keeps every result
//! reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `y += c * x`
fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let rows = (0..self.rows).map(|i| vec_mat(self.row(i), other)).collect();
        let mut m = Matrix::from_rows(rows);
        m.cols = other.cols;
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Block-diagonal matrix with `self` then `other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Row vector times matrix.
pub fn vec_mat(x: &[Rational], m: &Matrix) -> Vec<Rational> {
    assert_eq!(x.len(), m.rows, "dimension mismatch");
    let mut out = zeros(m.cols);
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            axpy(&mut out, xi, m.row(i));
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec(m: &Matrix, y: &[Rational]) -> Vec<Rational> {
    assert_eq!(y.len(), m.cols, "dimension mismatch");
    (0..m.rows).map(|i| dot(m.row(i), y)).collect()
}

/// Sparse integer form of a rational matrix: entries are `num / den`.
#[derive(Debug, Clone)]
pub struct IntegerMatrix {
    rows: Vec<Vec<(usize, BigInt)>>,
    cols: usize,
    den: BigInt,
}

impl IntegerMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        let den = m.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows = (0..m.rows)
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.numer() * (&den / x.denom())))
                    .collect()
            })
            .collect();
        IntegerMatrix { rows, cols: m.cols, den }
    }
}

/// A rational vector held as integer numerators over one denominator, so
/// products with integer matrices need no normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledVector {
    num: Vec<BigInt>,
    den: BigInt,
}

impl ScaledVector {
    pub fn from_rationals(x: &[Rational]) -> Self {
        let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        ScaledVector { num, den }
    }

    pub fn mul_matrix(&self, m: &IntegerMatrix) -> ScaledVector {
        assert_eq!(self.num.len(), m.rows.len(), "dimension mismatch");
        let mut num = vec![BigInt::zero(); m.cols];
        for (xi, row) in self.num.iter().zip(&m.rows) {
            if xi.is_zero() {
                continue;
            }
            for (j, a) in row {
                if a.is_one() {
                    num[*j] += xi;
                } else {
                    num[*j] += xi * a;
                }
            }
        }
        let den = if m.den.is_one() { self.den.clone() } else { &self.den * &m.den };
        ScaledVector { num, den }
    }

    pub fn dot(&self, y: &ScaledVector) -> Rational {
        let s =
            self.num.iter().zip(&y.num).fold(BigInt::zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc + a * b });
        Rational::new(s, &self.den * &y.den)
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num.iter().map(|a| Rational::new(a.clone(), self.den.clone())).collect()
    }
}

/// Result of offering a vector to an [`EchelonBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent and became basis vector `index`.
    Added(usize),
    /// The vector is this combination of the basis vectors inserted so far.
    Dependent(Vec<Rational>),
}

/// Incrementally built basis of a subspace of ℚⁿ.
///
/// Internally a reduced row echelon form is kept together with the
/// expression of each echelon row in terms of the vectors actually
/// inserted, so dependent vectors can be written in the inserted basis.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Rational>>,
    // rows[i] = sum_j combos[i][j] * inserted[j]; combos[i] may be shorter
    // than the number of inserted vectors, missing entries are zero
    combos: Vec<Vec<Rational>>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, pivots: Vec::new(), rows: Vec::new(), combos: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after elimination and the coefficients used.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut r = v.to_vec();
        let coef: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        for (c, row) in coef.iter().zip(&self.rows) {
            if !c.is_zero() {
                axpy(&mut r, &-c, row);
            }
        }
        (r, coef)
    }

    fn combine(&self, coef: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.rows.len());
        for (c, combo) in coef.iter().zip(&self.combos) {
            if !c.is_zero() {
                axpy(&mut out[..combo.len()], c, combo);
            }
        }
        out
    }

    /// Coordinates of `v` in the inserted vectors, if it lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (r, coef) = self.reduce(v);
        is_zero_vec(&r).then(|| self.combine(&coef))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    pub fn insert(&mut self, v: &[Rational]) -> Insertion {
        let (mut r, coef) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Insertion::Dependent(self.combine(&coef));
        };
        let index = self.rows.len();
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // new row = (inserted[index] - sum coef_i rows_i) / pivot
        let mut combo = self.combine(&coef);
        for c in combo.iter_mut() {
            *c = -&*c * &inv;
        }
        combo.push(inv.clone());
        for (row, old) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if !row[p].is_zero() {
                let g = row[p].clone();
                axpy(row, &-&g, &r);
                old.resize(combo.len(), Rational::zero());
                axpy(old, &-&g, &combo);
            }
        }
        self.pivots.push(p);
        self.rows.push(r);
        self.combos.push(combo);
        Insertion::Added(index)
    }
}

pub fn rank(m: &Matrix) -> usize {
    let mut basis = EchelonBasis::new(m.cols());
    for i in 0..m.rows() {
        basis.insert(m.row(i));
    }
    basis.len()
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert!(a.is_square() && a.rows() == b.len(), "dimension mismatch");
    let n = a.rows();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                axpy(row, &-f, &pivot_row);
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    let cols: Option<Vec<Vec<Rational>>> = (0..n).map(|j| solve(a, &unit(n, j))).collect();
    Some(Matrix::from_rows(cols?).transpose())
}
