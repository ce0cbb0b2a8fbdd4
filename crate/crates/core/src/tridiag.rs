//! Reduction of a complex symmetric matrix to tridiagonal form by
//! generalized Householder similarity transformations.
//!
//! The reduction works from the last column towards the first. Step `m`
//! (`m = n−1, …, 2`) reflects the leading `m×m` block so that column `m+1`
//! has a single nonzero entry above the diagonal.

use num_complex::{Complex, Complex64};
use num_traits::Zero;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::indefinite::{dot_unchecked, Reflector};
use crate::matrix::{CMatrix, CSMatrix};
use crate::scalar::{is_finite, lift, lower, norm_f64, Real, WorkPrecision};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex symmetric tridiagonal matrix: diagonal `d` and codiagonal `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub d: Vec<Complex64>,
    pub e: Vec<Complex64>,
}

impl TridiagonalMatrix {
    pub fn new(d: Vec<Complex64>, e: Vec<Complex64>) -> Result<Self> {
        let expected = d.len().saturating_sub(1);
        if e.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: e.len() });
        }
        Ok(Self { d, e })
    }

    pub fn order(&self) -> usize {
        self.d.len()
    }

    pub fn to_dense(&self) -> CSMatrix {
        CSMatrix::from_upper(self.order(), |i, j| {
            if i == j {
                self.d[i]
            } else if j == i + 1 {
                self.e[i]
            } else {
                ZERO
            }
        })
    }
}

/// Accumulated complex orthogonal transform `Z`, with `Zᵀ Z = 𝟙`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    z: CMatrix,
}

impl Transform {
    pub fn identity(n: usize) -> Self {
        Self { z: CMatrix::identity(n) }
    }

    pub fn from_matrix(z: CMatrix) -> Result<Self> {
        if !z.is_square() {
            return Err(Error::OrderMismatch(z.rows(), z.cols()));
        }
        Ok(Self { z })
    }

    pub fn order(&self) -> usize {
        self.z.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.z
    }

    pub fn into_matrix(self) -> CMatrix {
        self.z
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut CMatrix {
        &mut self.z
    }
}

/// Square column-major scratch matrix in the working precision.
pub(crate) struct Work<R: Real> {
    n: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> Work<R> {
    pub(crate) fn lift(m: &CMatrix) -> Self {
        let n = m.rows();
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            data.extend(m.col(j).iter().map(|&z| lift::<R>(z)));
        }
        Self { n, data }
    }

    pub(crate) fn identity(n: usize) -> Self {
        let mut data = vec![Complex::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Complex::new(R::one(), R::zero());
        }
        Self { n, data }
    }

    pub(crate) fn lower(&self) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |i, j| lower(self.get(i, j)))
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Complex<R> {
        self.data[j * self.n + i]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: Complex<R>) {
        self.data[j * self.n + i] = z;
    }

    #[inline]
    fn col(&self, j: usize) -> &[Complex<R>] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    #[inline]
    fn col_mut(&mut self, j: usize) -> &mut [Complex<R>] {
        &mut self.data[j * self.n..(j + 1) * self.n]
    }

    /// Columns `a < b` as disjoint mutable slices.
    pub(crate) fn col_pair_mut(&mut self, a: usize, b: usize) -> (&mut [Complex<R>], &mut [Complex<R>]) {
        let n = self.n;
        let (head, tail) = self.data.split_at_mut(b * n);
        (&mut head[a * n..(a + 1) * n], &mut tail[..n])
    }

    /// Reverses the column order in place.
    pub(crate) fn reverse_columns(&mut self) {
        let n = self.n;
        for j in 0..n / 2 {
            let (left, right) = self.col_pair_mut(j, n - 1 - j);
            left.swap_with_slice(right);
        }
    }

    /// `H B H` on the leading `k×k` block through the rank-2 update
    /// `B − v wᵀ − w vᵀ`, where `p = ⟨v,v⟩/2`, `u = B v / p`,
    /// `q = vᵀu / 2p` and `w = u − q v`.
    fn reflect_leading(&mut self, h: &Reflector<R>) {
        let v = h.vector();
        let k = v.len();
        let p = h.self_product() * R::from_f64(0.5);
        let mut u = vec![Complex::<R>::zero(); k];
        for (j, &vj) in v.iter().enumerate() {
            for (ui, &bij) in u.iter_mut().zip(&self.col(j)[..k]) {
                *ui = *ui + bij * vj;
            }
        }
        for ui in u.iter_mut() {
            *ui = *ui / p;
        }
        let q = dot_unchecked(v, &u) / (p * R::from_f64(2.0));
        let w: Vec<Complex<R>> = u.iter().zip(v).map(|(&ui, &vi)| ui - q * vi).collect();
        for j in 0..k {
            let (vj, wj) = (v[j], w[j]);
            for i in 0..=j {
                let updated = self.get(i, j) - (v[i] * wj + w[i] * vj);
                self.set(i, j, updated);
                self.set(j, i, updated);
            }
        }
    }

    /// `Z ← Z · diag(H, 𝟙)` for a reflector on the first `k` coordinates.
    fn reflect_columns(&mut self, h: &Reflector<R>) {
        let v = h.vector();
        let mut t = vec![Complex::<R>::zero(); self.n];
        for (j, &vj) in v.iter().enumerate() {
            for (ti, &zi) in t.iter_mut().zip(self.col(j)) {
                *ti = *ti + zi * vj;
            }
        }
        let scale = Complex::new(R::from_f64(2.0), R::zero()) / h.self_product();
        for (j, &vj) in v.iter().enumerate() {
            let f = scale * vj;
            for (zi, &ti) in self.col_mut(j).iter_mut().zip(&t) {
                *zi = *zi - f * ti;
            }
        }
    }
}

/// `B′ = H B H` through the rank-2 update `B − v wᵀ − w vᵀ`, never forming `H`.
pub fn householder_step(b: &CSMatrix, h: &Reflector) -> Result<CSMatrix> {
    let k = b.order();
    if h.order() != k {
        return Err(Error::LengthMismatch { expected: k, actual: h.order() });
    }
    let mut work = Work::<f64>::lift(b.as_matrix());
    work.reflect_leading(h);
    CSMatrix::new(work.lower())
}

/// Reduces `a` to tridiagonal `T = Zᵀ A Z` with double-double intermediates.
///
/// `Z` is only accumulated when `accumulate` is set. Orders 1 and 2 pass
/// through unchanged with `Z = 𝟙`. A breakdown reports the step index `m`,
/// i.e. the order of the reflector that could not be built.
pub fn tridiagonalize(a: &CSMatrix, accumulate: bool) -> Result<(TridiagonalMatrix, Option<Transform>)> {
    tridiagonalize_with(a, accumulate, WorkPrecision::default())
}

pub fn tridiagonalize_with(
    a: &CSMatrix,
    accumulate: bool,
    precision: WorkPrecision,
) -> Result<(TridiagonalMatrix, Option<Transform>)> {
    match precision {
        WorkPrecision::Double => reduce::<f64>(a, accumulate),
        WorkPrecision::DoubleDouble => reduce::<TwoFloat>(a, accumulate),
    }
}

fn reduce<R: Real>(a: &CSMatrix, accumulate: bool) -> Result<(TridiagonalMatrix, Option<Transform>)> {
    let reduced = reduce_work::<R>(a, accumulate)?;
    let d: Vec<Complex64> = reduced.d.iter().map(|&z| lower(z)).collect();
    let e: Vec<Complex64> = reduced.e.iter().map(|&z| lower(z)).collect();
    Ok((TridiagonalMatrix { d, e }, reduced.z.map(|z| Transform { z: z.lower() })))
}

/// Tridiagonal form and transform kept in the working precision.
pub(crate) struct WorkReduction<R: Real> {
    pub(crate) d: Vec<Complex<R>>,
    pub(crate) e: Vec<Complex<R>>,
    pub(crate) z: Option<Work<R>>,
}

pub(crate) fn reduce_work<R: Real>(a: &CSMatrix, accumulate: bool) -> Result<WorkReduction<R>> {
    let n = a.order();
    if n == 0 {
        return Err(Error::LengthMismatch { expected: 1, actual: 0 });
    }
    if !a.as_matrix().is_finite() {
        return Err(Error::NonFinite("input matrix"));
    }
    let mut work = Work::<R>::lift(a.as_matrix());
    let mut z = accumulate.then(|| Work::<R>::identity(n));
    // entries of y_m below this are treated as already reduced
    let tiny = 10.0 * f64::EPSILON * a.frobenius_norm();

    for m in (2..n).rev() {
        // y_m: first m entries of column m (0-based), i.e. of column m+1 counted from one.
        let y: Vec<Complex<R>> = work.col(m)[..m].to_vec();
        let reduced = y[..m - 1].iter().all(|&yi| norm_f64(yi) <= tiny);
        let sub = if reduced {
            y[m - 1]
        } else {
            let h = Reflector::new(&y).map_err(|err| match err {
                Error::IsotropicBreakdown { .. } => Error::IsotropicBreakdown { step: m },
                other => other,
            })?;
            work.reflect_leading(&h);
            if let Some(z) = z.as_mut() {
                z.reflect_columns(&h);
            }
            // H y = y − v; its last entry is −|y|_*.
            y[m - 1] - h.vector()[m - 1]
        };
        if !is_finite(sub) {
            return Err(Error::NonFinite("tridiagonal reduction"));
        }
        for i in 0..m - 1 {
            work.set(i, m, Complex::zero());
            work.set(m, i, Complex::zero());
        }
        work.set(m - 1, m, sub);
        work.set(m, m - 1, sub);
    }

    let d: Vec<Complex<R>> = (0..n).map(|i| work.get(i, i)).collect();
    let e: Vec<Complex<R>> = (0..n.saturating_sub(1)).map(|i| work.get(i, i + 1)).collect();
    if !d.iter().chain(&e).all(|&z| is_finite(z)) {
        return Err(Error::NonFinite("tridiagonal reduction"));
    }
    Ok(WorkReduction { d, e, z })
}

/// `‖Zᵀ A Z − T‖_F / ‖A‖_F`.
pub fn similarity_residual(a: &CSMatrix, t: &TridiagonalMatrix, z: &Transform) -> Result<f64> {
    let n = a.order();
    if t.order() != n {
        return Err(Error::OrderMismatch(n, t.order()));
    }
    if z.order() != n {
        return Err(Error::OrderMismatch(n, z.order()));
    }
    let zt_a_z = z.matrix().transpose().matmul(a.as_matrix())?.matmul(z.matrix())?;
    let diff = zt_a_z.sub(t.to_dense().as_matrix())?;
    let norm = a.frobenius_norm();
    Ok(if norm == 0.0 { diff.frobenius_norm() } else { diff.frobenius_norm() / norm })
}
