//! Implicitly shifted QL iteration for complex symmetric tridiagonal matrices.
//!
//! Each sweep takes a Wilkinson shift from the upper-left 2×2 corner of the
//! active block, applies a complex Jacobi rotation at the lower-right corner
//! and chases the resulting bulge upward with complex Givens rotations. The
//! rotations satisfy `c² + s² = 1` but are not unitary.
//!
//! Blocks split at premature zeros are processed one after another, top
//! block first; no work is done in parallel.
//!
//! The iteration runs in the [`WorkPrecision`] of the options. Complex
//! orthogonal transforms can have norms far above one, and the accumulated
//! eigenvectors inherit rounding errors of the sweeps amplified by that norm.

use num_complex::{Complex, Complex64};
use num_traits::Zero;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::indefinite::{principal_sqrt, ISOTROPY_TOLERANCE};
use crate::scalar::{is_finite, lift, lower, norm_f64, Real, WorkPrecision};
use crate::tridiag::{Transform, TridiagonalMatrix, Work};

/// Relative perturbation of the shift used when retrying after a rotation breakdown.
const SHIFT_PERTURBATION: f64 = 1e-8;
const BREAKDOWN_RETRIES: usize = 3;

#[inline]
fn one<R: Real>() -> Complex<R> {
    Complex::new(R::one(), R::zero())
}

/// Direction in which the bulge is chased.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Shift from the upper-left corner, chase upward. The top eigenvalue converges first.
    #[default]
    Ql,
    /// Shift from the lower-right corner, chase downward.
    Qr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Relative convergence threshold `ε_conv` for `|E_k| ≤ ε_conv (|D_k| + |D_{k+1}|)`.
    pub tol: f64,
    /// Sweep budget per eigenvalue.
    pub max_sweeps: usize,
    pub direction: Direction,
    /// Retry a sweep with a perturbed shift when a rotation breaks down.
    pub perturb_on_breakdown: bool,
    /// Accumulate eigenvectors.
    pub vectors: bool,
    /// Arithmetic of the reduction, the sweeps and the accumulated transform.
    pub precision: WorkPrecision,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: f64::EPSILON,
            max_sweeps: 50,
            direction: Direction::Ql,
            perturb_on_breakdown: false,
            vectors: false,
            precision: WorkPrecision::default(),
        }
    }
}

/// Complex plane rotation acting on coordinates `k, k+1`:
/// `[[c, s], [−s, c]]` embedded in the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<R: Real = f64> {
    pub c: Complex<R>,
    pub s: Complex<R>,
    pub k: usize,
}

impl<R: Real> Rotation<R> {
    pub fn identity(k: usize) -> Self {
        Self { c: one(), s: Complex::zero(), k }
    }

    /// `c = a/r`, `s = b/r` with `r = √(a² + b²)`.
    ///
    /// `b = 0` gives the identity rotation. A radicand that is small compared
    /// to `|a|² + |b|²` is a breakdown reported at position `k`.
    pub fn from_pair(a: Complex<R>, b: Complex<R>, k: usize) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::identity(k));
        }
        let radicand = a * a + b * b;
        let scale = lower(a).norm_sqr() + lower(b).norm_sqr();
        if !is_finite(radicand) || norm_f64(radicand) <= ISOTROPY_TOLERANCE * scale {
            return Err(Error::RotationBreakdown { position: k });
        }
        let r = principal_sqrt(radicand);
        Ok(Self { c: a / r, s: b / r, k })
    }

    /// `|c² + s² − 1|`, evaluated in the rotation's own precision.
    pub fn defect(&self) -> f64 {
        norm_f64(self.c * self.c + self.s * self.s - one())
    }

    fn rotate_pair(&self, left: &mut [Complex<R>], right: &mut [Complex<R>]) {
        for (p, q) in left.iter_mut().zip(right.iter_mut()) {
            let (zp, zq) = (*p, *q);
            *p = self.c * zp - self.s * zq;
            *q = self.s * zp + self.c * zq;
        }
    }
}

impl Rotation {
    /// Right-multiplies the columns `k, k+1` of `z` by this rotation.
    pub fn apply_right(&self, z: &mut Transform) {
        let (left, right) = z.matrix_mut().col_pair_mut(self.k, self.k + 1);
        self.rotate_pair(left, right);
    }
}

/// Matrices the sweeps can accumulate rotations into.
pub(crate) trait Accumulator<R: Real> {
    fn rotate(&mut self, rot: &Rotation<R>);
    fn reverse_columns(&mut self);
}

impl Accumulator<f64> for Transform {
    fn rotate(&mut self, rot: &Rotation) {
        rot.apply_right(self);
    }

    fn reverse_columns(&mut self) {
        let n = self.order();
        for j in 0..n / 2 {
            let (left, right) = self.matrix_mut().col_pair_mut(j, n - 1 - j);
            left.swap_with_slice(right);
        }
    }
}

impl<R: Real> Accumulator<R> for Work<R> {
    fn rotate(&mut self, rot: &Rotation<R>) {
        let (left, right) = self.col_pair_mut(rot.k, rot.k + 1);
        rot.rotate_pair(left, right);
    }

    fn reverse_columns(&mut self) {
        Work::reverse_columns(self);
    }
}

/// Eigenvalue of `[[d1, e1], [e1, d2]]` closest to `d1`.
///
/// Evaluated as `d1 − e1² / (h ± r)` with `h = (d2 − d1)/2`, `r = √(h² + e1²)`,
/// which equals `(d1 + d2)/2 ∓ r` without cancellation. An exact tie takes `+r`.
pub fn wilkinson_shift<R: Real>(d1: Complex<R>, d2: Complex<R>, e1: Complex<R>) -> Complex<R> {
    let half = (d2 - d1) * R::from_f64(0.5);
    let root = principal_sqrt(half * half + e1 * e1);
    let plus = half + root;
    let minus = half - root;
    let (np, nm) = (plus.norm_sqr(), minus.norm_sqr());
    if np == nm {
        return d1 + plus;
    }
    // σ − d1 ∈ {plus, minus} and plus·minus = −e1²; the smaller one is −e1²/larger.
    let larger = if np > nm { plus } else { minus };
    d1 - e1 * e1 / larger
}

/// Jacobi rotation that starts an implicitly shifted QL sweep:
/// `c = (D_n − σ)/ρ`, `s = E_{n−1}/ρ`, `ρ = √((D_n − σ)² + E_{n−1}²)`.
pub fn initial_rotation<R: Real>(dn: Complex<R>, en1: Complex<R>, shift: Complex<R>, k: usize) -> Result<Rotation<R>> {
    Rotation::from_pair(dn - shift, en1, k)
}

/// `|E| ≤ tol · (|D_k| + |D_{k+1}|)`, with an underflow floor.
pub fn negligible<R: Real>(e: Complex<R>, d_upper: Complex<R>, d_lower: Complex<R>, tol: f64) -> bool {
    let mag = norm_f64(e);
    mag <= tol * (norm_f64(d_upper) + norm_f64(d_lower)) || mag <= f64::MIN_POSITIVE
}

/// Maximal index ranges `[lo, hi]` (inclusive) inside `[from, to]` whose
/// interior codiagonal entries are all non-negligible.
pub fn partition_scan<R: Real>(
    d: &[Complex<R>],
    e: &[Complex<R>],
    from: usize,
    to: usize,
    tol: f64,
) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = from;
    for k in from..to {
        if negligible(e[k], d[k], d[k + 1], tol) {
            blocks.push((start, k));
            start = k + 1;
        }
    }
    if start <= to {
        blocks.push((start, to));
    }
    blocks
}

/// Working state of the QL iteration on one tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct SweepState<R: Real = f64> {
    pub d: Vec<Complex<R>>,
    pub e: Vec<Complex<R>>,
    /// Active block, inclusive.
    pub lo: usize,
    pub hi: usize,
    /// Shift used by the most recent sweep.
    pub shift: Complex<R>,
    /// Transient off-tridiagonal entry during the chase; zero between sweeps.
    pub bulge: Complex<R>,
    /// Sweeps spent on the eigenvalue currently at `lo`.
    pub sweeps: usize,
}

impl SweepState {
    pub fn new(t: &TridiagonalMatrix) -> Self {
        Self::from_parts(t.d.clone(), t.e.clone())
    }

    /// One sweep over the active block, accumulating into `acc` if given.
    /// Returns the rotations applied, bottom first. Block-size-1 ranges are
    /// already converged; this is then a no-op.
    pub fn sweep(&mut self, acc: Option<&mut Transform>) -> Result<Vec<Rotation>> {
        self.sweep_with(acc, false)
    }
}

impl<R: Real> SweepState<R> {
    /// State in working precision `R`, e.g. `SweepState::<TwoFloat>::lifted(&t)`.
    pub fn lifted(t: &TridiagonalMatrix) -> Self {
        Self::from_parts(t.d.iter().map(|&z| lift(z)).collect(), t.e.iter().map(|&z| lift(z)).collect())
    }

    /// [`SweepState::sweep`] without accumulation, in any precision.
    pub fn sweep_values(&mut self) -> Result<Vec<Rotation<R>>> {
        self.sweep_with::<Work<R>>(None, false)
    }

    fn from_parts(d: Vec<Complex<R>>, e: Vec<Complex<R>>) -> Self {
        let hi = d.len().saturating_sub(1);
        Self { d, e, lo: 0, hi, shift: Complex::zero(), bulge: Complex::zero(), sweeps: 0 }
    }

    fn sweep_with<A: Accumulator<R>>(&mut self, acc: Option<&mut A>, retry: bool) -> Result<Vec<Rotation<R>>> {
        let (lo, hi) = (self.lo, self.hi);
        if hi <= lo {
            return Ok(Vec::new());
        }
        let base_shift = wilkinson_shift(self.d[lo], self.d[lo + 1], self.e[lo]);
        let attempts = if retry { BREAKDOWN_RETRIES + 1 } else { 1 };
        let mut shift = base_shift;
        let mut last_err = None;
        for _ in 0..attempts {
            let mut d = self.d[lo..=hi].to_vec();
            let mut e = self.e[lo..hi].to_vec();
            match chase(&mut d, &mut e, shift, lo) {
                Ok(rotations) => {
                    if !d.iter().chain(&e).all(|&z| is_finite(z)) {
                        return Err(Error::NonFinite("QL sweep"));
                    }
                    self.d[lo..=hi].copy_from_slice(&d);
                    self.e[lo..hi].copy_from_slice(&e);
                    self.shift = shift;
                    self.bulge = Complex::zero();
                    if let Some(z) = acc {
                        for rot in &rotations {
                            z.rotate(rot);
                        }
                    }
                    return Ok(rotations);
                }
                Err(err) => {
                    last_err = Some(err);
                    shift = shift * R::from_f64(1.0 + SHIFT_PERTURBATION);
                }
            }
        }
        Err(last_err.expect("at least one attempt"))
    }
}

/// Performs one shifted sweep on a block given as local slices; `offset`
/// translates local indices back to global positions for the rotations.
fn chase<R: Real>(
    d: &mut [Complex<R>],
    e: &mut [Complex<R>],
    shift: Complex<R>,
    offset: usize,
) -> Result<Vec<Rotation<R>>> {
    let last = d.len() - 1;
    let mut rotations = Vec::with_capacity(last);

    let jacobi = initial_rotation(d[last], e[last - 1], shift, offset + last - 1)?;
    let mut bulge = rotate(d, e, last - 1, &jacobi, Complex::zero());
    rotations.push(jacobi);

    for k in (0..last - 1).rev() {
        let givens = Rotation::from_pair(e[k + 1], bulge, offset + k)?;
        bulge = rotate(d, e, k, &givens, bulge);
        rotations.push(givens);
    }
    Ok(rotations)
}

/// `T ← Rᵀ T R` for a rotation on local coordinates `k, k+1` of a tridiagonal
/// matrix carrying `bulge` at `(k, k+2)`. Returns the new bulge at `(k−1, k+1)`.
fn rotate<R: Real>(
    d: &mut [Complex<R>],
    e: &mut [Complex<R>],
    k: usize,
    rot: &Rotation<R>,
    bulge: Complex<R>,
) -> Complex<R> {
    let (c, s) = (rot.c, rot.s);
    let (a, b, dd) = (d[k], e[k], d[k + 1]);
    let (cc, ss, cs) = (c * c, s * s, c * s);
    let two_bcs = b * cs * R::from_f64(2.0);
    d[k] = a * cc - two_bcs + dd * ss;
    d[k + 1] = a * ss + two_bcs + dd * cc;
    e[k] = (a - dd) * cs + b * (cc - ss);
    if k + 1 < e.len() {
        e[k + 1] = s * bulge + c * e[k + 1];
    }
    if k > 0 {
        let above = e[k - 1];
        e[k - 1] = c * above;
        s * above
    } else {
        Complex::zero()
    }
}

/// Raw result of the tridiagonal QL iteration, in diagonal order.
#[derive(Debug, Clone)]
pub struct RawSpectrum {
    pub eigenvalues: Vec<Complex64>,
    pub sweeps: Vec<usize>,
    pub partitions: Vec<(usize, usize)>,
    pub vectors: Option<Transform>,
}

/// Runs the deflation loop: sweep the leading active block until its first
/// codiagonal entry is negligible, deflate, continue with the remainder.
///
/// Eigenvalues are returned in diagonal order; see [`crate::spectrum`] for
/// the sorted and normalized form.
pub fn iterate_tridiagonal(t: &TridiagonalMatrix, opts: &SolverOptions, acc: Option<Transform>) -> Result<RawSpectrum> {
    let n = t.order();
    if let Some(z) = acc.as_ref() {
        if z.order() != n {
            return Err(Error::OrderMismatch(n, z.order()));
        }
    }
    if t.d.iter().chain(&t.e).any(|z| !z.is_finite()) {
        return Err(Error::NonFinite("tridiagonal input"));
    }
    match opts.precision {
        WorkPrecision::Double => {
            iterate_in::<f64, Transform>(t.d.clone(), t.e.clone(), opts, acc).map(|raw| raw.lowered(|z| z))
        }
        WorkPrecision::DoubleDouble => {
            let d = t.d.iter().map(|&z| lift(z)).collect();
            let e = t.e.iter().map(|&z| lift(z)).collect();
            let acc = acc.map(|z| Work::<TwoFloat>::lift(z.matrix()));
            let raw = iterate_in(d, e, opts, acc)?;
            Ok(raw.lowered(|z| Transform::from_matrix(z.lower()).expect("square")))
        }
    }
}

/// QL or QR iteration in precision `R`, eigenvalues rounded to `f64`.
pub(crate) fn iterate_in<R: Real, A: Accumulator<R>>(
    d: Vec<Complex<R>>,
    e: Vec<Complex<R>>,
    opts: &SolverOptions,
    acc: Option<A>,
) -> Result<Raw<A>> {
    let n = d.len();
    match opts.direction {
        Direction::Ql => ql_iterate(d, e, opts, acc),
        Direction::Qr => {
            // QR on T is QL on the reversed matrix P T P, with P the exchange matrix.
            let d = d.into_iter().rev().collect();
            let e = e.into_iter().rev().collect();
            let acc = acc.map(|mut z| {
                z.reverse_columns();
                z
            });
            let mut raw = ql_iterate(d, e, opts, acc).map_err(|err| match err {
                Error::NoConvergence { index, sweeps } => Error::NoConvergence { index: n - 1 - index, sweeps },
                Error::RotationBreakdown { position } => {
                    Error::RotationBreakdown { position: n.saturating_sub(2) - position }
                }
                other => other,
            })?;
            raw.eigenvalues.reverse();
            raw.sweeps.reverse();
            for p in raw.partitions.iter_mut() {
                *p = (n - 1 - p.1, n - 1 - p.0);
            }
            if let Some(z) = raw.vectors.as_mut() {
                z.reverse_columns();
            }
            Ok(raw)
        }
    }
}

/// [`RawSpectrum`] with the accumulator still in working precision.
pub(crate) struct Raw<A> {
    pub(crate) eigenvalues: Vec<Complex64>,
    pub(crate) sweeps: Vec<usize>,
    pub(crate) partitions: Vec<(usize, usize)>,
    pub(crate) vectors: Option<A>,
}

impl<A> Raw<A> {
    pub(crate) fn lowered(self, f: impl FnOnce(A) -> Transform) -> RawSpectrum {
        RawSpectrum {
            eigenvalues: self.eigenvalues,
            sweeps: self.sweeps,
            partitions: self.partitions,
            vectors: self.vectors.map(f),
        }
    }
}

fn ql_iterate<R: Real, A: Accumulator<R>>(
    d: Vec<Complex<R>>,
    e: Vec<Complex<R>>,
    opts: &SolverOptions,
    mut acc: Option<A>,
) -> Result<Raw<A>> {
    let n = d.len();
    let mut state = SweepState::from_parts(d, e);
    let mut sweeps = vec![0usize; n];
    let mut partitions: Vec<(usize, usize)> = Vec::new();
    let mut lo = 0;
    while lo + 1 < n {
        let (_, block_hi) = partition_scan(&state.d, &state.e, lo, n - 1, opts.tol)[0];
        if block_hi == lo {
            sweeps[lo] = state.sweeps;
            state.sweeps = 0;
            state.e[lo] = Complex::zero();
            lo += 1;
            continue;
        }
        if block_hi < n - 1 && !partitions.iter().any(|&(_, h)| h == block_hi) {
            partitions.push((lo, block_hi));
        }
        if state.sweeps >= opts.max_sweeps {
            return Err(Error::NoConvergence { index: lo, sweeps: state.sweeps });
        }
        state.lo = lo;
        state.hi = block_hi;
        state.sweep_with(acc.as_mut(), opts.perturb_on_breakdown)?;
        state.sweeps += 1;
    }
    if n > 0 {
        sweeps[n - 1] = state.sweeps;
    }
    let eigenvalues = state.d.iter().map(|&z| lower(z)).collect();
    Ok(Raw { eigenvalues, sweeps, partitions, vectors: acc })
}
