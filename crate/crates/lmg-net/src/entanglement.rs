//! Entanglement diagnostics: logarithmic negativity of qubit pairs,
//! von Neumann entropy of blocks, and ground-state scans over the coupling
//! strength. Logarithms are base 2 throughout.

use crate::hamiltonian::{build_pairwise, parity_diagonal, HamiltonianSpec};
use crate::hilbert::{partial_trace_state, partial_transpose, DensityMatrix, StateVector};
use crate::spectra::{diagonalize, SpectrumResult};
use crate::{Error, Result};
use faer::{Mat, Side};
use num_complex::Complex64;

/// Eigenvalues below this are treated as exact zeros; anything more negative
/// signals a broken reduced density matrix.
const PSD_TOL: f64 = 1e-10;

/// Ascending eigenvalues of a Hermitian complex matrix.
pub fn hermitian_eigenvalues(mat: &Mat<Complex64>) -> Result<Vec<f64>> {
    let evd = mat.self_adjoint_eigen(Side::Lower).map_err(|_| Error::EigenFailure)?;
    let mut ev: Vec<f64> = (0..mat.nrows()).map(|k| evd.S()[k].re).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ev)
}

/// Logarithmic negativity `E_N(rho_ij) = log2 ||rho_ij^(T_i)||` of the
/// two-qubit reduced state of qubits `i` and `j`.
pub fn log_negativity(psi: &StateVector, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::RepeatedLabel(i));
    }
    let rho = partial_trace_state(psi, &[i, j])?;
    log_negativity_dm(&rho)
}

/// Logarithmic negativity of a two-qubit density matrix, transposing its
/// first qubit. The trace norm of a Hermitian matrix is the sum of absolute
/// eigenvalues.
pub fn log_negativity_dm(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, &rho.qubits()[..1])?;
    let trace_norm: f64 = hermitian_eigenvalues(&pt)?.iter().map(|l| l.abs()).sum();
    Ok(trace_norm.log2().max(0.0))
}

/// Von Neumann entropy `S(rho) = -tr(rho log2 rho)` from the eigenvalues of a
/// density matrix, with `0 log 0 = 0`.
pub fn entropy_of_dm(rho: &DensityMatrix) -> Result<f64> {
    let mut s = 0f64;
    for &p in &hermitian_eigenvalues(rho.matrix())? {
        if p < -PSD_TOL {
            return Err(Error::NotPositive(p));
        }
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Block entropy of a pure state: entropy of the reduced state of `block`,
/// which must be a non-empty strict subset of the qubits.
pub fn block_entropy(psi: &StateVector, block: &[usize]) -> Result<f64> {
    if block.is_empty() || block.len() >= psi.n() {
        return Err(Error::InvalidBlock { n: psi.n() });
    }
    entropy_of_dm(&partial_trace_state(psi, block)?)
}

/// One row of a ground-state entanglement scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub j: f64,
    /// Logarithmic negativity of the (1, 2) pair.
    pub e_n_pair: f64,
    /// Von Neumann entropy of qubit 1.
    pub s_single: f64,
    pub perturbed: bool,
}

/// Picks a deterministic ground state from a spectrum: the unique ground
/// state when the ground cluster is one-dimensional, otherwise the
/// even-parity combination within the cluster (the GHZ-like symmetric branch
/// of the FM doublet).
pub fn representative_ground(spectrum: &SpectrumResult) -> StateVector {
    let indices: Vec<usize> = (0..spectrum.ground_cluster_size()).collect();
    if indices.len() == 1 {
        return spectrum.eigenstate(0);
    }
    let parity = parity_diagonal(spectrum.n());
    let d = indices.len();
    let dim = spectrum.dim();
    let v = spectrum.eigenvectors();
    // Parity restricted to the ground subspace.
    let mut p_sub = Mat::<f64>::zeros(d, d);
    for (a, &ia) in indices.iter().enumerate() {
        for (b, &ib) in indices.iter().enumerate() {
            let mut acc = 0f64;
            for x in 0..dim {
                acc += parity[x] * v[(x, ia)] * v[(x, ib)];
            }
            p_sub[(a, b)] = acc;
        }
    }
    let evd = p_sub.self_adjoint_eigen(Side::Lower).expect("small symmetric eigen");
    // Largest parity eigenvalue = the +1 branch.
    let best = (0..d).max_by(|&a, &b| evd.S()[a].partial_cmp(&evd.S()[b]).unwrap()).unwrap();
    let mut amps = vec![Complex64::ZERO; dim];
    for x in 0..dim {
        let mut acc = 0f64;
        for (a, &ia) in indices.iter().enumerate() {
            acc += evd.U()[(a, best)] * v[(x, ia)];
        }
        amps[x] = Complex64::new(acc, 0.0);
    }
    StateVector::from_unnormalized(spectrum.n(), amps).expect("combination of unit vectors")
}

/// Ground-state pairwise negativity and single-qubit entropy against the
/// coupling strength, for the homogeneous network with an optional `g X_1`
/// perturbation.
pub fn ground_entanglement_scan(
    n: usize,
    delta: f64,
    j_grid: &[f64],
    g: Option<f64>,
) -> Result<Vec<ScanRow>> {
    if j_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    j_grid
        .iter()
        .map(|&j| {
            let mut spec = HamiltonianSpec::homogeneous(n, delta, j)?;
            if let Some(g) = g {
                spec = spec.with_perturbation(1, g)?;
            }
            let spectrum = diagonalize(&build_pairwise(&spec)?)?;
            let psi = representative_ground(&spectrum);
            Ok(ScanRow {
                j,
                e_n_pair: log_negativity(&psi, 1, 2)?,
                s_single: block_entropy(&psi, &[1])?,
                perturbed: g.is_some(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{make_reference, ReferenceState, StateVector};
    use num_complex::Complex64 as C;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn h2(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn product_state_has_zero_negativity() {
        let mut amps = vec![C::ZERO; 4];
        amps[0] = C::new(FRAC_1_SQRT_2, 0.0);
        amps[1] = C::new(FRAC_1_SQRT_2, 0.0); // |0> (x) |+>
        let psi = StateVector::new(2, amps).unwrap();
        assert!(log_negativity(&psi, 1, 2).unwrap().abs() < 1e-10);
    }

    #[test]
    fn bell_pair_negativity_is_one() {
        let bell = make_reference(ReferenceState::Ghz, 2).unwrap();
        assert!((log_negativity(&bell, 1, 2).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ghz_marginals_are_ppt() {
        let ghz = make_reference(ReferenceState::Ghz, 3).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(log_negativity(&ghz, i, j).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn negativity_is_symmetric_in_the_pair() {
        let w = make_reference(ReferenceState::W, 4).unwrap();
        let a = log_negativity(&w, 2, 4).unwrap();
        let b = log_negativity(&w, 4, 2).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!(log_negativity(&w, 2, 2).is_err());
    }

    #[test]
    fn sep_blocks_have_zero_entropy() {
        let sep = make_reference(ReferenceState::Sep, 4).unwrap();
        for block in [vec![1], vec![2, 3], vec![1, 2, 4]] {
            assert!(block_entropy(&sep, &block).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn ghz_single_qubit_entropy_is_one() {
        for n in 2..=5 {
            let ghz = make_reference(ReferenceState::Ghz, n).unwrap();
            assert!((block_entropy(&ghz, &[1]).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn w_single_qubit_entropy_is_binary_entropy() {
        for n in 3..=6 {
            let w = make_reference(ReferenceState::W, n).unwrap();
            let expected = h2(1.0 / n as f64);
            assert!((block_entropy(&w, &[1]).unwrap() - expected).abs() < 1e-10);
        }
        // N=3 closed form: h(1/3).
        let w3 = make_reference(ReferenceState::W, 3).unwrap();
        assert!((block_entropy(&w3, &[1]).unwrap() - 0.9182958340544896).abs() < 1e-10);
    }

    #[test]
    fn block_entropy_rejects_trivial_blocks() {
        let w = make_reference(ReferenceState::W, 3).unwrap();
        assert!(block_entropy(&w, &[]).is_err());
        assert!(block_entropy(&w, &[1, 2, 3]).is_err());
    }

    #[test]
    fn scan_at_zero_coupling_is_separable() {
        let rows = ground_entanglement_scan(3, 1.0, &[0.0], None).unwrap();
        assert!(rows[0].e_n_pair.abs() < 1e-10);
        assert!(rows[0].s_single.abs() < 1e-10);
        assert!(!rows[0].perturbed);
    }

    #[test]
    fn fm_representative_ground_is_ghz_like() {
        let spec = HamiltonianSpec::homogeneous(3, 1.0, 8.0).unwrap();
        let spectrum = diagonalize(&build_pairwise(&spec).unwrap()).unwrap();
        let psi = representative_ground(&spectrum);
        let ghz = make_reference(ReferenceState::Ghz, 3).unwrap();
        assert!(crate::hilbert::fidelity(&psi, &ghz).unwrap() > 0.99);
        // The symmetric branch carries near-maximal single-qubit entropy.
        assert!(block_entropy(&psi, &[1]).unwrap() > 0.99);
    }

    #[test]
    fn pairs_equivalent_for_homogeneous_ground() {
        let spec = HamiltonianSpec::homogeneous(4, 1.0, -1.5).unwrap();
        let spectrum = diagonalize(&build_pairwise(&spec).unwrap()).unwrap();
        let psi = representative_ground(&spectrum);
        let reference = log_negativity(&psi, 1, 2).unwrap();
        for (i, j) in [(1, 3), (2, 4), (3, 4)] {
            assert!((log_negativity(&psi, i, j).unwrap() - reference).abs() < 1e-8);
        }
    }
}
