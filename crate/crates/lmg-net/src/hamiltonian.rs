//! Dense Hamiltonian builders for
//! `H = -sum_i (delta_i/2) Z_i - sum_{i<j} J_ij X_i X_j + sum_i g_i X_i`,
//! plus the symmetry operators it commutes with in the homogeneous case.
//!
//! Every term is real in the computational basis, so Hamiltonians are stored
//! as real symmetric matrices.

use crate::hilbert::{qubit_bit, qubit_mask};
use crate::{check_qubit_count, Error, Result};
use faer::Mat;
use serde::{Deserialize, Serialize};

/// Parameters of the network Hamiltonian: per-qubit level splittings, the
/// symmetric coupling matrix, and optional transverse perturbations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    n: usize,
    /// Level splittings `delta_i > 0`, in units of the reference splitting.
    deltas: Vec<f64>,
    /// Row-major `n x n` coupling matrix, symmetric with zero diagonal.
    couplings: Vec<f64>,
    /// Transverse perturbation strengths `g_i` (zero by default).
    perturbations: Vec<f64>,
}

impl HamiltonianSpec {
    pub fn new(deltas: Vec<f64>, couplings: Vec<Vec<f64>>, perturbations: Vec<f64>) -> Result<Self> {
        let n = deltas.len();
        check_qubit_count(n)?;
        if deltas.iter().any(|&d| d <= 0.0 || !d.is_finite()) {
            return Err(Error::BadDeltas);
        }
        if couplings.len() != n || couplings.iter().any(|row| row.len() != n) {
            return Err(Error::BadCouplings { n });
        }
        let mut flat = vec![0.0; n * n];
        for i in 0..n {
            if couplings[i][i] != 0.0 {
                return Err(Error::BadCouplings { n });
            }
            for j in 0..n {
                if (couplings[i][j] - couplings[j][i]).abs() > 1e-12 {
                    return Err(Error::BadCouplings { n });
                }
                flat[i * n + j] = couplings[i][j];
            }
        }
        if perturbations.len() != n {
            return Err(Error::AmplitudeCount { n, expected: n, got: perturbations.len() });
        }
        Ok(Self { n, deltas, couplings: flat, perturbations })
    }

    /// Homogeneous network: `delta_i = delta`, `J_ij = j` for every pair.
    pub fn homogeneous(n: usize, delta: f64, j: f64) -> Result<Self> {
        check_qubit_count(n)?;
        if delta <= 0.0 || !delta.is_finite() {
            return Err(Error::BadDeltas);
        }
        let mut couplings = vec![j; n * n];
        for i in 0..n {
            couplings[i * n + i] = 0.0;
        }
        Ok(Self { n, deltas: vec![delta; n], couplings, perturbations: vec![0.0; n] })
    }

    /// Sets the transverse perturbation `g X_qubit` on a single qubit.
    pub fn with_perturbation(mut self, qubit: usize, g: f64) -> Result<Self> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::QubitIndex { index: qubit, n: self.n });
        }
        self.perturbations[qubit - 1] = g;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self, i: usize) -> f64 {
        self.deltas[i - 1]
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.couplings[(i - 1) * self.n + (j - 1)]
    }

    pub fn perturbation(&self, i: usize) -> f64 {
        self.perturbations[i - 1]
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn perturbations(&self) -> &[f64] {
        &self.perturbations
    }
}

/// A dense Hamiltonian matrix; real symmetric in the computational basis.
#[derive(Debug, Clone)]
pub struct DenseHamiltonian {
    n: usize,
    pub(crate) mat: Mat<f64>,
}

impl DenseHamiltonian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Mat<f64> {
        &self.mat
    }

    pub fn element(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    /// Largest entry magnitude; used to scale residual tolerances.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                m = m.max(self.mat[(i, j)].abs());
            }
        }
        m
    }
}

/// Z eigenvalue (+1 for bit 0) of qubit `q` in basis index `b`.
#[inline]
fn z_sign(b: usize, q: usize, n: usize) -> f64 {
    1.0 - 2.0 * qubit_bit(b, q, n) as f64
}

/// Builds the pairwise form: `-sum_i (delta_i/2) Z_i - sum_{i<j} J_ij X_i X_j
/// + sum_i g_i X_i`.
pub fn build_pairwise(spec: &HamiltonianSpec) -> Result<DenseHamiltonian> {
    let n = spec.n;
    let dim = 1usize << n;
    let mut mat = Mat::<f64>::zeros(dim, dim);
    for b in 0..dim {
        // Diagonal: -sum_i delta_i/2 z_i(b).
        let mut d = 0.0;
        for i in 1..=n {
            d -= 0.5 * spec.delta(i) * z_sign(b, i, n);
        }
        mat[(b, b)] = d;
        // X_i X_j flips two bits; X_i flips one.
        for i in 1..=n {
            for j in (i + 1)..=n {
                let jij = spec.coupling(i, j);
                if jij != 0.0 {
                    mat[(b ^ qubit_mask(i, n) ^ qubit_mask(j, n), b)] -= jij;
                }
            }
            let g = spec.perturbation(i);
            if g != 0.0 {
                mat[(b ^ qubit_mask(i, n), b)] += g;
            }
        }
    }
    Ok(DenseHamiltonian { n, mat })
}

/// Builds the collective form for homogeneous parameters:
/// `-(delta/2) Z_tot - (j/2) X_tot^2 + (n j / 2) I`.
pub fn build_collective(n: usize, delta: f64, j: f64) -> Result<DenseHamiltonian> {
    check_qubit_count(n)?;
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::BadDeltas);
    }
    let dim = 1usize << n;
    let mut mat = Mat::<f64>::zeros(dim, dim);
    for b in 0..dim {
        // Z_tot is diagonal; X_tot^2 = n I + sum_{i != j} X_i X_j contributes
        // n on the diagonal and 1 for every index pair differing in two bits.
        let ztot: f64 = (1..=n).map(|q| z_sign(b, q, n)).sum();
        mat[(b, b)] = -0.5 * delta * ztot - 0.5 * j * n as f64 + 0.5 * (n as f64) * j;
        for i in 1..=n {
            for jq in (i + 1)..=n {
                // X_i X_j appears twice in the i != j sum.
                mat[(b ^ qubit_mask(i, n) ^ qubit_mask(jq, n), b)] -= j;
            }
        }
    }
    Ok(DenseHamiltonian { n, mat })
}

/// The spin-flip parity operator `prod_i Z_i`: diagonal with entries
/// `(-1)^popcount(b)`.
pub fn parity_operator(n: usize) -> Result<Mat<f64>> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    let mut mat = Mat::<f64>::zeros(dim, dim);
    for b in 0..dim {
        mat[(b, b)] = if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    }
    Ok(mat)
}

/// Diagonal of the parity operator, without materializing the matrix.
pub fn parity_diagonal(n: usize) -> Vec<f64> {
    (0..(1usize << n))
        .map(|b| if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// Total-spin Casimir `(sum X_i)^2 + (sum Y_i)^2 + (sum Z_i)^2` in Pauli
/// normalization; real symmetric, commutes with any homogeneous Hamiltonian.
pub fn total_spin_squared(n: usize) -> Result<Mat<f64>> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    let mut mat = Mat::<f64>::zeros(dim, dim);
    for b in 0..dim {
        // Diagonal: 3n from X^2+Y^2+Z^2 per qubit plus sum_{i != j} z_i z_j.
        let mut diag = 3.0 * n as f64;
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    diag += z_sign(b, i, n) * z_sign(b, j, n);
                }
            }
        }
        mat[(b, b)] = diag;
        // Off-diagonal: X_i X_j + Y_i Y_j gives 1 - z_i(b) z_j(b) on the
        // double flip, i.e. 2 when the two bits differ and 0 otherwise.
        for i in 1..=n {
            for j in (i + 1)..=n {
                let w = 2.0 * (1.0 - z_sign(b, i, n) * z_sign(b, j, n));
                if w != 0.0 {
                    mat[(b ^ qubit_mask(i, n) ^ qubit_mask(j, n), b)] += w;
                }
            }
        }
    }
    Ok(mat)
}

/// `max_ij |(A B - B A)_ij|` for square real matrices.
pub fn commutator_max(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let ab = a * b;
    let ba = b * a;
    let dim = a.nrows();
    let mut m = 0f64;
    for j in 0..dim {
        for i in 0..dim {
            m = m.max((ab[(i, j)] - ba[(i, j)]).abs());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_is_minus_half_z() {
        let spec = HamiltonianSpec::homogeneous(1, 1.0, 0.0).unwrap();
        let h = build_pairwise(&spec).unwrap();
        assert_eq!(h.element(0, 0), -0.5);
        assert_eq!(h.element(1, 1), 0.5);
        assert_eq!(h.element(0, 1), 0.0);
    }

    #[test]
    fn two_qubit_matrix_matches_hand_form() {
        // n=2, delta=1, J=1: [[-1,0,0,-1],[0,0,-1,0],[0,-1,0,0],[-1,0,0,1]]
        let spec = HamiltonianSpec::homogeneous(2, 1.0, 1.0).unwrap();
        let h = build_pairwise(&spec).unwrap();
        let expected = [
            [-1.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h.element(i, j), expected[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn uncoupled_three_qubits_diagonal() {
        let spec = HamiltonianSpec::homogeneous(3, 1.0, 0.0).unwrap();
        let h = build_pairwise(&spec).unwrap();
        assert_eq!(h.element(0, 0), -1.5);
        assert_eq!(h.element(7, 7), 1.5);
        for b in 0..8usize {
            let ones = b.count_ones() as f64;
            assert_eq!(h.element(b, b), -0.5 * (3.0 - 2.0 * ones));
        }
    }

    #[test]
    fn collective_equals_pairwise_for_homogeneous() {
        for n in 2..=6 {
            for &j in &[-2.0, -0.5, 0.5, 2.0] {
                let spec = HamiltonianSpec::homogeneous(n, 1.0, j).unwrap();
                let hp = build_pairwise(&spec).unwrap();
                let hc = build_collective(n, 1.0, j).unwrap();
                let dim = 1usize << n;
                for a in 0..dim {
                    for b in 0..dim {
                        assert!(
                            (hp.element(a, b) - hc.element(a, b)).abs() <= 1e-12,
                            "n={n} j={j} entry ({a},{b})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn collective_single_qubit_j_terms_cancel() {
        let h = build_collective(1, 1.0, 3.0).unwrap();
        assert_eq!(h.element(0, 0), -0.5);
        assert_eq!(h.element(1, 1), 0.5);
        assert_eq!(h.element(0, 1), 0.0);
    }

    #[test]
    fn collective_trace_vanishes() {
        // trace(H) = 2^n (n j / 2) - (j/2) trace(X_tot^2) = 0 since
        // trace(X_tot^2) = n 2^n.
        let h = build_collective(3, 1.0, 1.0).unwrap();
        let tr: f64 = (0..8).map(|b| h.element(b, b)).sum();
        assert!(tr.abs() < 1e-12);
    }

    #[test]
    fn parity_single_qubit() {
        let p = parity_operator(1).unwrap();
        assert_eq!(p[(0, 0)], 1.0);
        assert_eq!(p[(1, 1)], -1.0);
    }

    #[test]
    fn parity_commutes_unless_perturbed() {
        let spec = HamiltonianSpec::new(
            vec![1.0, 1.3, 0.7],
            vec![
                vec![0.0, -0.4, 1.2],
                vec![-0.4, 0.0, 0.9],
                vec![1.2, 0.9, 0.0],
            ],
            vec![0.0; 3],
        )
        .unwrap();
        let h = build_pairwise(&spec).unwrap();
        let p = parity_operator(3).unwrap();
        assert!(commutator_max(h.matrix(), &p) <= 1e-12);

        let perturbed = spec.with_perturbation(2, 0.01).unwrap();
        let hg = build_pairwise(&perturbed).unwrap();
        assert!(commutator_max(hg.matrix(), &p) > 1e-6);
    }

    #[test]
    fn casimir_single_qubit_is_three() {
        let s2 = total_spin_squared(1).unwrap();
        assert_eq!(s2[(0, 0)], 3.0);
        assert_eq!(s2[(1, 1)], 3.0);
        assert_eq!(s2[(0, 1)], 0.0);
    }

    #[test]
    fn casimir_commutes_with_homogeneous_h() {
        for n in 3..=4 {
            let spec = HamiltonianSpec::homogeneous(n, 1.0, -1.3).unwrap();
            let h = build_pairwise(&spec).unwrap();
            let s2 = total_spin_squared(n).unwrap();
            assert!(commutator_max(h.matrix(), &s2) <= 1e-10);
        }
    }

    #[test]
    fn builder_is_linear_in_couplings() {
        let n = 3;
        let base = HamiltonianSpec::homogeneous(n, 1.0, 0.0).unwrap();
        let j1 = HamiltonianSpec::homogeneous(n, 1.0, 1.0).unwrap();
        let jc = HamiltonianSpec::homogeneous(n, 1.0, 2.5).unwrap();
        let h0 = build_pairwise(&base).unwrap();
        let h1 = build_pairwise(&j1).unwrap();
        let hc = build_pairwise(&jc).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let expected = h0.element(a, b) + 2.5 * (h1.element(a, b) - h0.element(a, b));
                assert!((hc.element(a, b) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(HamiltonianSpec::homogeneous(0, 1.0, 0.0).is_err());
        assert!(HamiltonianSpec::homogeneous(15, 1.0, 0.0).is_err());
        assert!(HamiltonianSpec::homogeneous(3, -1.0, 0.0).is_err());
        // Asymmetric couplings rejected.
        assert!(HamiltonianSpec::new(
            vec![1.0, 1.0],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
            vec![0.0, 0.0]
        )
        .is_err());
        // Nonzero diagonal rejected.
        assert!(HamiltonianSpec::new(
            vec![1.0, 1.0],
            vec![vec![0.5, 1.0], vec![1.0, 0.0]],
            vec![0.0, 0.0]
        )
        .is_err());
    }
}
