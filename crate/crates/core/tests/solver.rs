//! End-to-end properties of the reduction and the QL iteration on random
//! complex symmetric matrices.

use cseig::oracle::eig_small;
use cseig::{
    eigen, indefinite_dot, multiset_distance, tridiagonalize, tridiagonalize_with, CSMatrix, Direction, SolverOptions,
    WorkPrecision,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = f64::EPSILON;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn with_vectors() -> SolverOptions {
    SolverOptions { vectors: true, ..SolverOptions::default() }
}

#[test]
fn reduction_preserves_spectrum() {
    let mut rng = rng(100);
    for _ in 0..50 {
        let n = rng.gen_range(3..=10);
        let a = CSMatrix::random(n, &mut rng);
        let (t, _) = tridiagonalize(&a, false).unwrap();
        let before = eig_small(a.as_matrix()).unwrap();
        let after = eig_small(t.to_dense().as_matrix()).unwrap();
        assert!(multiset_distance(&before, &after) <= 1e-8 * a.frobenius_norm());
    }
}

#[test]
fn transform_is_complex_orthogonal() {
    let mut rng = rng(101);
    for n in [3, 17, 64, 200] {
        let a = CSMatrix::random(n, &mut rng);
        let (_, z) = tridiagonalize(&a, true).unwrap();
        let defect = z.unwrap().matrix().orthogonality_defect();
        assert!(defect <= 1e-12 * n as f64, "n = {n}: {defect:e}");
    }
}

#[test]
fn real_input_stays_real() {
    let mut rng = rng(102);
    let n = 40;
    let a = CSMatrix::from_upper(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
    let bound = 10.0 * EPS * a.frobenius_norm();
    for precision in [WorkPrecision::Double, WorkPrecision::DoubleDouble] {
        let (t, z) = tridiagonalize_with(&a, true, precision).unwrap();
        let z = z.unwrap();
        let worst =
            t.d.iter()
                .chain(&t.e)
                .map(|v| v.im.abs())
                .chain((0..n).flat_map(|j| z.matrix().col(j).iter().map(|v| v.im.abs()).collect::<Vec<_>>()))
                .fold(0.0, f64::max);
        assert!(worst <= bound, "{precision:?}: {worst:e}");
        let s = eigen(&a, &SolverOptions { precision, ..SolverOptions::default() }).unwrap();
        assert!(s.eigenvalues.iter().all(|l| l.im.abs() <= bound));
    }
}

#[test]
fn every_small_input_converges() {
    let mut rng = rng(103);
    for _ in 0..40 {
        let n = rng.gen_range(1..=50);
        let a = CSMatrix::random(n, &mut rng);
        let s = eigen(&a, &SolverOptions::default()).unwrap();
        assert_eq!(s.len(), n);
        assert!(s.diagnostics.sweeps.iter().all(|&k| k <= 50));
    }
}

#[test]
fn ql_and_qr_agree() {
    let mut rng = rng(104);
    for _ in 0..30 {
        let n = rng.gen_range(2..=20);
        let a = CSMatrix::random(n, &mut rng);
        let ql = eigen(&a, &with_vectors()).unwrap();
        let qr = eigen(&a, &SolverOptions { direction: Direction::Qr, ..with_vectors() }).unwrap();
        assert!(multiset_distance(&ql.eigenvalues, &qr.eigenvalues) <= 1e-10 * a.frobenius_norm());
        assert!(qr.diagnostics.max_residual.unwrap() <= 1e-12);
    }
}

#[test]
fn eigenpairs_have_small_residuals() {
    let mut rng = rng(105);
    for n in [5, 60, 200] {
        let a = CSMatrix::random(n, &mut rng);
        let s = eigen(&a, &with_vectors()).unwrap();
        let x = s.eigenvectors.as_ref().unwrap();
        let norm = a.frobenius_norm();
        for (j, &lambda) in s.eigenvalues.iter().enumerate() {
            let ax = a.as_matrix().matvec(x.col(j)).unwrap();
            let r: f64 = ax.iter().zip(x.col(j)).map(|(p, q)| (p - lambda * q).norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-10 * norm, "n = {n}, pair {j}: {r:e}");
        }
    }
}

#[test]
fn eigenvectors_are_indefinitely_orthonormal() {
    let mut rng = rng(106);
    let n = 80;
    let a = CSMatrix::random(n, &mut rng);
    let norm = a.frobenius_norm();
    let s = eigen(&a, &with_vectors()).unwrap();
    for i in 0..n {
        let xi = s.eigenvector(i).unwrap();
        assert!(!s.quasi_null[i]);
        assert!((indefinite_dot(xi, xi).unwrap() - 1.0).norm() <= 1e-8);
        for j in i + 1..n {
            if (s.eigenvalues[i] - s.eigenvalues[j]).norm() > 1e-6 * norm {
                assert!(indefinite_dot(xi, s.eigenvector(j).unwrap()).unwrap().norm() <= 1e-8);
            }
        }
    }
}

#[test]
fn plain_double_precision_is_available() {
    let mut rng = rng(107);
    let a = CSMatrix::random(8, &mut rng);
    let opts = SolverOptions { precision: WorkPrecision::Double, ..with_vectors() };
    let s = eigen(&a, &opts).unwrap();
    let expected = eig_small(a.as_matrix()).unwrap();
    assert!(multiset_distance(&s.eigenvalues, &expected) <= 1e-8 * a.frobenius_norm());
    assert!(s.diagnostics.max_residual.unwrap() <= 1e-10);
}

#[test]
fn eigenvalues_are_sorted() {
    let mut rng = rng(108);
    let s = eigen(&CSMatrix::random(30, &mut rng), &SolverOptions::default()).unwrap();
    for w in s.eigenvalues.windows(2) {
        assert!(w[0].re < w[1].re || (w[0].re == w[1].re && w[0].im <= w[1].im));
    }
}
