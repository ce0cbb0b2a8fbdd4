//! Dense complex matrices.
//!
//! [`CMatrix`] is a general column-major matrix used for transforms and
//! eigenvector blocks. [`CSMatrix`] wraps a square `CMatrix` and guarantees
//! `A[(i, j)] == A[(j, i)]` bit for bit.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row slices. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        for r in rows {
            if r.len() != n_cols {
                return Err(Error::LengthMismatch { expected: n_cols, actual: r.len() });
            }
        }
        Ok(Self::from_fn(n_rows, n_cols, |i, j| rows[i][j]))
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

    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable access to two distinct columns at once.
    pub fn col_pair_mut(&mut self, a: usize, b: usize) -> (&mut [Complex64], &mut [Complex64]) {
        assert!(a < b, "col_pair_mut requires a < b");
        let n = self.rows;
        let (left, right) = self.data.split_at_mut(b * n);
        (&mut left[a * n..(a + 1) * n], &mut right[..n])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::OrderMismatch(self.cols, rhs.rows));
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = rhs[(k, j)];
                if b == ZERO {
                    continue;
                }
                for (o, a) in dst.iter_mut().zip(self.col(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: x.len() });
        }
        let mut y = vec![ZERO; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, a) in y.iter_mut().zip(self.col(j)) {
                *yi += a * xj;
            }
        }
        Ok(y)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::OrderMismatch(self.rows, rhs.rows));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Largest `|A_ij - A_ji|`; square matrices only.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.cols {
            for i in (j + 1)..self.rows {
                worst = worst.max((self[(i, j)] - self[(j, i)]).norm());
            }
        }
        worst
    }

    /// `‖Aᵀ A − 𝟙‖_F`, the departure from complex orthogonality.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.transpose().matmul(self).expect("square by construction");
        gram.sub(&CMatrix::identity(self.cols)).expect("same shape").frobenius_norm()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

/// Dense complex symmetric matrix, `A = Aᵀ` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CSMatrix {
    inner: CMatrix,
}

impl CSMatrix {
    /// Accepts `a` only if it is square, finite and exactly symmetric.
    pub fn new(a: CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::OrderMismatch(a.rows, a.cols));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix entries"));
        }
        let asym = a.asymmetry();
        if asym != 0.0 {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self { inner: a })
    }

    /// Accepts `a` if `max |A_ij − A_ji| ≤ rel_tol · max |A|`, then stores `(A + Aᵀ)/2`.
    pub fn symmetrize(a: CMatrix, rel_tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::OrderMismatch(a.rows, a.cols));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix entries"));
        }
        let asym = a.asymmetry();
        if asym > rel_tol * a.max_abs() {
            return Err(Error::NotSymmetric(asym));
        }
        let n = a.rows;
        let mut s = a;
        for j in 0..n {
            for i in (j + 1)..n {
                let avg = (s[(i, j)] + s[(j, i)]) * 0.5;
                s[(i, j)] = avg;
                s[(j, i)] = avg;
            }
        }
        Ok(Self { inner: s })
    }

    /// Fills the upper triangle from `f(i, j)` (with `i <= j`) and mirrors it.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let z = f(i, j);
                m[(i, j)] = z;
                m[(j, i)] = z;
            }
        }
        Self { inner: m }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: CMatrix::identity(n) }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        Self::from_upper(d.len(), |i, j| if i == j { d[i] } else { ZERO })
    }

    /// Random matrix with independent real and imaginary parts uniform in `[-1, 1]`,
    /// upper triangle drawn row by row and mirrored.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for _ in 0..n * (n + 1) / 2 {
            upper.push(Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
        }
        let mut m = CMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = upper[k];
                m[(j, i)] = upper[k];
                k += 1;
            }
        }
        Self { inner: m }
    }

    pub fn order(&self) -> usize {
        self.inner.rows
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }
}

impl Index<(usize, usize)> for CSMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

/// Hausdorff-style distance between two eigenvalue multisets.
///
/// Pairs are matched greedily, closest pair first, and the largest matched
/// distance is returned. Returns `f64::INFINITY` if the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == a.len() {
            break;
        }
    }
    worst
}
