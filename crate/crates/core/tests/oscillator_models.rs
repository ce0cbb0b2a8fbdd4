//! Oscillator Hamiltonians through the full solver.

use cseig::oracle::eig_small;
use cseig::oscillator::{build_hamiltonian, lowest_levels, OscillatorModel};
use cseig::{eigen, indefinite_dot, multiset_distance, SolverOptions};

fn with_vectors() -> SolverOptions {
    SolverOptions { vectors: true, ..SolverOptions::default() }
}

#[test]
fn quartic_is_hermitian_limit() {
    let h = build_hamiltonian(&OscillatorModel::quartic(0.7, 10).unwrap()).unwrap();
    assert!(h.as_matrix().max_abs() > 0.0);
    for j in 0..10 {
        assert!(h.as_matrix().col(j).iter().all(|z| z.im == 0.0));
    }
    let s = eigen(&h, &SolverOptions::default()).unwrap();
    assert!(s.eigenvalues.iter().all(|l| l.im.abs() <= 1e-10));
    let oracle = eig_small(h.as_matrix()).unwrap();
    assert!(multiset_distance(&s.eigenvalues, &oracle) <= 1e-8 * h.frobenius_norm());
}

#[test]
fn imaginary_cubic_levels_are_real() {
    for g in [0.1, 0.5, 1.0] {
        let h = build_hamiltonian(&OscillatorModel::imaginary_cubic(g, 128).unwrap()).unwrap();
        let s = eigen(&h, &SolverOptions::default()).unwrap();
        for j in lowest_levels(&s.eigenvalues, 6) {
            assert!(s.eigenvalues[j].im.abs() <= 1e-8, "G = {g}: {}", s.eigenvalues[j]);
        }
    }
}

#[test]
fn ground_state_is_converged_in_basis_size() {
    let e0 = |n| {
        let h = build_hamiltonian(&OscillatorModel::imaginary_cubic(1.0, n).unwrap()).unwrap();
        let s = eigen(&h, &SolverOptions::default()).unwrap();
        s.eigenvalues[lowest_levels(&s.eigenvalues, 1)[0]]
    };
    assert!((e0(128) - e0(256)).norm() <= 1e-8);
}

#[test]
fn imaginary_cubic_eigenvectors_are_indefinitely_orthonormal() {
    let h = build_hamiltonian(&OscillatorModel::imaginary_cubic(1.0, 128).unwrap()).unwrap();
    let s = eigen(&h, &with_vectors()).unwrap();
    let low = lowest_levels(&s.eigenvalues, 6);
    for (a, &i) in low.iter().enumerate() {
        for &j in &low[a..] {
            let dot = indefinite_dot(s.eigenvector(i).unwrap(), s.eigenvector(j).unwrap()).unwrap();
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((dot - target).norm() <= 1e-8, "({i}, {j}): {dot}");
        }
    }
}

#[test]
fn complex_scaled_resonance_is_angle_independent() {
    let eps0 = |theta| {
        let h = build_hamiltonian(&OscillatorModel::complex_scaled_cubic(theta, 200).unwrap()).unwrap();
        let s = eigen(&h, &SolverOptions::default()).unwrap();
        s.eigenvalues[lowest_levels(&s.eigenvalues, 1)[0]]
    };
    let (a, b) = (eps0(0.30), eps0(0.35));
    assert!(a.im < 0.0);
    assert!((a - b).norm() <= 1e-6, "{a} vs {b}");
}
