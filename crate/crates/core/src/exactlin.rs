//! Exact rational scalars, vectors and dense linear algebra.
//!
//! Everything here is exact: no tolerances, no rounding. `BigRational` keeps
//! itself in lowest terms after every operation, so structural equality is
//! value equality.

use std::fmt;
use std::ops::{Deref, Index};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, CvxError, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || CvxError::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn concat(&self, other: &QVector) -> QVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        QVector(v)
    }

    pub fn push(&mut self, x: Rational) {
        self.0.push(x);
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> QVector {
        QVector(self.0[range].to_vec())
    }

    /// Positive multiple with coprime integer entries. The zero vector maps to itself.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * &lcm).to_integer()).collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        QVector(
            ints.into_iter()
                .map(|x| Rational::from_integer(x / &g))
                .collect(),
        )
    }

    /// L1 norm.
    pub fn norm1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
    }
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense rectangular matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<QVector>, ncols: usize) -> Result<Self> {
        for r in &rows {
            check_dim(ncols, r.dim())?;
        }
        Ok(QMatrix { rows, ncols })
    }

    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let ncols = rows
            .first()
            .map(QVector::dim)
            .ok_or_else(|| CvxError::InvalidInput("matrix needs at least one row".into()))?;
        Self::new(rows, ncols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<QVector> = rows.iter().map(|r| QVector::from_ints(r)).collect();
        Self::from_rows(rows).expect("rectangular integer matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            ncols: self.rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(&self.rows, self.ncols).1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<QVector> {
        nullspace(&self.rows, self.ncols)
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
/// Pivots are chosen as the first nonzero entry in the column.
pub fn rref(rows: &[QVector], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn nullspace(rows: &[QVector], ncols: usize) -> Vec<QVector> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            QVector(v)
        })
        .collect()
}

/// Linearly independent spanning set of `span(vectors)` (the nonzero RREF rows).
pub fn span_basis(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    rref(vectors, dim).0.into_iter().map(QVector).collect()
}

pub fn rank_of(vectors: &[QVector], dim: usize) -> usize {
    rref(vectors, dim).1.len()
}

pub fn in_span(v: &QVector, basis: &[QVector]) -> bool {
    let mut all = basis.to_vec();
    let r = rank_of(&all, v.dim());
    all.push(v.clone());
    rank_of(&all, v.dim()) == r
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinearSolution {
    Solution(QVector),
    NoSolution,
    AffineFamily {
        particular: QVector,
        nullspace: Vec<QVector>,
    },
}

/// Solves `A x = b` exactly.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<LinearSolution> {
    if a.nrows() == 0 {
        return Err(CvxError::InvalidInput("empty system".into()));
    }
    check_dim(a.nrows(), b.dim())?;
    let n = a.ncols();
    let aug: Vec<QVector> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let (m, pivots) = rref(&aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::NoSolution);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    let particular = QVector(x);
    if pivots.len() == n {
        Ok(LinearSolution::Solution(particular))
    } else {
        Ok(LinearSolution::AffineFamily {
            particular,
            nullspace: a.nullspace(),
        })
    }
}

/// Affine hull of a point set as `base + span(directions)`.
pub fn affine_hull(points: &[QVector]) -> Result<(QVector, Vec<QVector>)> {
    let base = points
        .first()
        .ok_or_else(|| CvxError::InvalidInput("affine hull of no points".into()))?
        .clone();
    for p in points {
        check_dim(base.dim(), p.dim())?;
    }
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p.sub(&base)).collect();
    Ok((base.clone(), span_basis(&diffs, base.dim())))
}

/// Right inverse data for a full-column-rank direction matrix `D` (columns =
/// `directions`): returns `L` with `L D = I`, so `u = L (x - base)` recovers
/// coordinates of points already in the affine hull.
pub fn left_inverse(directions: &[QVector], dim: usize) -> Vec<QVector> {
    let k = directions.len();
    // rows of D^T are the directions; pick k independent coordinates.
    let (_, pivots) = rref(directions, dim);
    debug_assert_eq!(pivots.len(), k);
    // square block M[i][j] = directions[j][pivots[i]]
    let m: Vec<QVector> = pivots
        .iter()
        .map(|&p| directions.iter().map(|d| d[p].clone()).collect())
        .collect();
    let inv = invert(&m).expect("independent directions give an invertible block");
    // L[i] = sum_j inv[i][j] * e_{pivots[j]}
    inv.iter()
        .map(|row| {
            let mut v = QVector::zeros(dim);
            for (j, &p) in pivots.iter().enumerate() {
                v.0[p] = row[j].clone();
            }
            v
        })
        .collect()
}

pub fn invert(m: &[QVector]) -> Option<Vec<QVector>> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    let aug: Vec<QVector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&QVector::unit(n, i)))
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| QVector(row[n..].to_vec())).collect())
}
