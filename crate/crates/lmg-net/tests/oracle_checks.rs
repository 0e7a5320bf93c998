//! Cross-checks of the production eigensolver, propagator, and reduced-state
//! machinery against independently coded brute-force oracles.

mod common;

use common::*;
use lmg_net::hamiltonian::{build_pairwise, HamiltonianSpec};
use lmg_net::hilbert::{
    make_reference, partial_trace_state, partial_transpose, ReferenceState, StateVector,
};
use lmg_net::spectra::diagonalize;
use lmg_net::{dynamics, entanglement};
use num_complex::Complex64 as C;

fn disordered_spec(n: usize, seed: u64) -> HamiltonianSpec {
    let mut rng = seeded_rng(seed);
    let mut couplings = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v: f64 = rand::Rng::random_range(&mut rng, -2.0..2.0);
            couplings[i][j] = v;
            couplings[j][i] = v;
        }
    }
    let deltas = (0..n).map(|_| rand::Rng::random_range(&mut rng, 0.5..1.5)).collect();
    HamiltonianSpec::new(deltas, couplings, vec![0.0; n]).unwrap()
}

#[test]
fn eigenvalues_match_jacobi_oracle_up_to_n3() {
    let mut cases: Vec<HamiltonianSpec> = vec![
        HamiltonianSpec::homogeneous(1, 1.0, 0.0).unwrap(),
        HamiltonianSpec::homogeneous(2, 1.0, 1.0).unwrap(),
        HamiltonianSpec::homogeneous(3, 1.0, -1.0).unwrap(),
        HamiltonianSpec::homogeneous(3, 1.0, 2.5).unwrap(),
    ];
    for seed in 0..4 {
        cases.push(disordered_spec(3, 100 + seed));
    }
    for spec in &cases {
        let h = build_pairwise(spec).unwrap();
        let spectrum = diagonalize(&h).unwrap();
        let oracle = jacobi_eigenvalues(&to_rows_f64(h.matrix()));
        for (a, b) in spectrum.eigenvalues().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "eigenvalue mismatch: {a} vs {b}");
        }
    }
}

#[test]
fn n2_j1_matches_bruteforce_4x4() {
    // Hand-written matrix [[-1,0,0,-1],[0,0,-1,0],[0,-1,0,0],[-1,0,0,1]].
    let m = vec![
        vec![-1.0, 0.0, 0.0, -1.0],
        vec![0.0, 0.0, -1.0, 0.0],
        vec![0.0, -1.0, 0.0, 0.0],
        vec![-1.0, 0.0, 0.0, 1.0],
    ];
    let oracle = jacobi_eigenvalues(&m);
    let spec = HamiltonianSpec::homogeneous(2, 1.0, 1.0).unwrap();
    let spectrum = diagonalize(&build_pairwise(&spec).unwrap()).unwrap();
    for (a, b) in spectrum.eigenvalues().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
    // Known closed forms: eigenvalues of -(Z1+Z2)/2 - X1X2 are
    // {-sqrt(2), -1, 1, sqrt(2)}.
    let expected = [-2f64.sqrt(), -1.0, 1.0, 2f64.sqrt()];
    for (a, b) in oracle.iter().zip(expected) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn eigenvector_residuals_and_orthonormality() {
    let spec = disordered_spec(3, 7);
    let h = build_pairwise(&spec).unwrap();
    let spectrum = diagonalize(&h).unwrap();
    let dim = h.dim();
    let scale = h.max_abs().max(1.0);
    let v = spectrum.eigenvectors();
    for k in 0..dim {
        let mut residual = 0f64;
        for i in 0..dim {
            let mut hv = 0f64;
            for j in 0..dim {
                hv += h.element(i, j) * v[(j, k)];
            }
            residual += (hv - spectrum.eigenvalues()[k] * v[(i, k)]).powi(2);
        }
        assert!(residual.sqrt() <= 1e-10 * scale, "residual too large for level {k}");
    }
    for a in 0..dim {
        for b in 0..dim {
            let mut ip = 0f64;
            for i in 0..dim {
                ip += v[(i, a)] * v[(i, b)];
            }
            let target = if a == b { 1.0 } else { 0.0 };
            assert!((ip - target).abs() <= 1e-10);
        }
    }
}

#[test]
fn propagator_matches_taylor_expm_up_to_n3() {
    for (n, seed) in [(1usize, 11u64), (2, 12), (3, 13)] {
        let spec = disordered_spec(n, seed);
        let h = build_pairwise(&spec).unwrap();
        let spectrum = diagonalize(&h).unwrap();
        let u = expm_minus_i_ht(&to_rows_f64(h.matrix()), 1.7);
        let mut rng = seeded_rng(seed + 1000);
        let psi0 = StateVector::new(n, random_state(n, &mut rng)).unwrap();
        let evolved = dynamics::evolve(&spectrum, &psi0, 1.7).unwrap();
        let dim = 1usize << n;
        let mut err = 0f64;
        for i in 0..dim {
            let mut expected = C::ZERO;
            for j in 0..dim {
                expected += u[i][j] * psi0.amp(j);
            }
            err += (expected - evolved.amp(i)).norm_sqr();
        }
        assert!(err.sqrt() < 1e-8, "n={n}: propagator deviates by {}", err.sqrt());
    }
}

#[test]
fn w3_reduced_state_matches_outer_product_oracle() {
    let w = make_reference(ReferenceState::W, 3).unwrap();
    let rho = partial_trace_state(&w, &[1, 2]).unwrap();
    let oracle = partial_trace_oracle(w.amplitudes(), 3, &[1, 2]);
    for i in 0..4 {
        for j in 0..4 {
            assert!((rho.element(i, j) - oracle[i][j]).norm() < 1e-12);
        }
    }
}

#[test]
fn random_reduced_states_match_oracle() {
    let mut rng = seeded_rng(42);
    for n in 2..=5usize {
        for _ in 0..5 {
            let psi = StateVector::new(n, random_state(n, &mut rng)).unwrap();
            let keep: Vec<usize> = (1..=n).filter(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect();
            let keep = if keep.is_empty() { vec![1] } else { keep };
            let rho = partial_trace_state(&psi, &keep).unwrap();
            let oracle = partial_trace_oracle(psi.amplitudes(), n, &keep);
            for i in 0..rho.dim() {
                for j in 0..rho.dim() {
                    assert!((rho.element(i, j) - oracle[i][j]).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn bell_partial_transpose_spectrum() {
    // Textbook case: eigenvalues {1/2, 1/2, 1/2, -1/2}, trace norm 2.
    let bell = make_reference(ReferenceState::Ghz, 2).unwrap();
    let rho = partial_trace_state(&bell, &[1, 2]).unwrap();
    let pt = partial_transpose(&rho, &[1]).unwrap();
    let ev = hermitian_eigenvalues_oracle(&to_rows_c64(&pt));
    let expected = [-0.5, 0.5, 0.5, 0.5];
    for (a, b) in ev.iter().zip(expected) {
        assert!((a - b).abs() < 1e-10, "PT eigenvalue {a} vs {b}");
    }
    let crate_ev = entanglement::hermitian_eigenvalues(&pt).unwrap();
    for (a, b) in crate_ev.iter().zip(&ev) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn density_eigensolver_matches_embedding_oracle() {
    let mut rng = seeded_rng(77);
    for _ in 0..5 {
        let psi = StateVector::new(4, random_state(4, &mut rng)).unwrap();
        let rho = partial_trace_state(&psi, &[1, 3]).unwrap();
        let fast = entanglement::hermitian_eigenvalues(rho.matrix()).unwrap();
        let oracle = hermitian_eigenvalues_oracle(&to_rows_c64(rho.matrix()));
        for (a, b) in fast.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn ghz_fidelity_bruteforce_expansion() {
    // Expand (|+>^3 + |->^3)/sqrt(2) amplitude-by-amplitude and compare the
    // overlap with |000> against the library's fidelity.
    let mut amps = vec![C::ZERO; 8];
    for b in 0..8usize {
        let minus_sign = if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let from_plus = 1.0 / 8f64.sqrt();
        let from_minus = minus_sign / 8f64.sqrt();
        amps[b] = C::new((from_plus + from_minus) / 2f64.sqrt(), 0.0);
    }
    let by_hand = StateVector::new(3, amps).unwrap();
    let ghz = make_reference(ReferenceState::Ghz, 3).unwrap();
    let sep = make_reference(ReferenceState::Sep, 3).unwrap();
    assert!((lmg_net::fidelity(&by_hand, &ghz).unwrap() - 1.0).abs() < 1e-12);
    assert!((lmg_net::fidelity(&ghz, &sep).unwrap() - by_hand.amp(0).re).abs() < 1e-12);
}
