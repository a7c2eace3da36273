//! Dense exact linear algebra over the rationals.
//!
//! Elimination is always leftmost pivot column, topmost candidate row, so
//! every routine here is a deterministic function of its input.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: expected length {expected}, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_len(self.cols, v.len())?;
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.mul_vec(&other.column(j))?;
            for (i, x) in col.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (r, pivots, _) = rref_tracked(self, false);
        (r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, if it is nonsingular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (_, pivots, t) = rref_tracked(self, true);
        (pivots.len() == self.rows).then(|| t.expect("tracked"))
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::ShapeMismatch { expected, found })
    }
}

/// Gauss-Jordan elimination, optionally recording the row operations as a
/// matrix `T` with `T * m = rref(m)`.
fn rref_tracked(m: &RatMatrix, track: bool) -> (RatMatrix, Vec<usize>, Option<RatMatrix>) {
    let mut a = m.clone();
    let mut t = track.then(|| RatMatrix::identity(m.rows));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        if let Some(t) = t.as_mut() {
            t.swap_rows(row, p);
        }
        let inv = a.get(row, col).recip();
        scale_row(&mut a, row, &inv);
        if let Some(t) = t.as_mut() {
            scale_row(t, row, &inv);
        }
        for i in 0..a.rows {
            if i == row {
                continue;
            }
            let f = a.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            sub_row(&mut a, i, row, &f);
            if let Some(t) = t.as_mut() {
                sub_row(t, i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots, t)
}

fn scale_row(m: &mut RatMatrix, i: usize, f: &Rational) {
    for j in 0..m.cols {
        let x = &mut m.data[i * m.cols + j];
        if !x.is_zero() {
            *x *= f;
        }
    }
}

/// row_i -= f * row_src
fn sub_row(m: &mut RatMatrix, i: usize, src: usize, f: &Rational) {
    for j in 0..m.cols {
        let s = m.get(src, j).clone();
        if !s.is_zero() {
            m.data[i * m.cols + j] -= f * s;
        }
    }
}

/// A linear subspace of `Q^n`, held as the nonzero rows of an RREF matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical RREF basis.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn member(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        check_len(self.ambient, v.len())?;
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r -= c * x;
                }
            }
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coeffs))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.member(v)?.is_some())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool, LinalgError> {
        check_len(self.ambient, v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v)?;
        }
        Ok(s)
    }
}

/// Null space of `a` as a subspace of `Q^cols`.
pub fn kernel(a: &RatMatrix) -> Subspace {
    let (r, pivots) = a.rref();
    let mut vectors = Vec::new();
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..a.cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); a.cols];
        v[f] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f).clone();
        }
        vectors.push(v);
    }
    Subspace::span(a.cols, &vectors).expect("consistent lengths")
}

/// Column space of `a` as a subspace of `Q^rows`.
pub fn image(a: &RatMatrix) -> Subspace {
    let (r, pivots) = a.transpose().rref();
    Subspace {
        ambient: a.rows,
        rows: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        pivots,
    }
}

pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    m.rref()
}

/// Canonical solution of `a x = b` with all free variables zero.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    Solver::new(a).solve(b)
}

/// A factored system `a x = b`, reusable across right-hand sides.
///
/// The canonical solution is linear in `b`, so it is read off `T b` where
/// `T a = rref(a)`.
#[derive(Debug, Clone)]
pub struct Solver {
    rows: usize,
    cols: usize,
    pivots: Vec<usize>,
    transform: RatMatrix,
}

impl Solver {
    pub fn new(a: &RatMatrix) -> Self {
        let (_, pivots, t) = rref_tracked(a, true);
        Self {
            rows: a.rows,
            cols: a.cols,
            pivots,
            transform: t.expect("tracked"),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        check_len(self.rows, b.len())?;
        let tb = self.transform.mul_vec(b)?;
        if tb[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = tb[i].clone();
        }
        Ok(Some(x))
    }
}
