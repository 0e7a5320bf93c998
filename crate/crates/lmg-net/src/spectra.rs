//! Dense Hermitian eigendecomposition, ground-state extraction, degeneracy
//! grouping, and degenerate-subspace-aware fidelity.

use crate::hamiltonian::{build_pairwise, DenseHamiltonian, HamiltonianSpec};
use crate::hilbert::StateVector;
use crate::{Error, Result, DEGENERACY_TOL};
use faer::{Mat, Side};
use num_complex::Complex64;

/// Relative tolerance for membership in the ground subspace.
pub const GROUND_TOL: f64 = 1e-8;

/// Scale-free quasi-degeneracy ratio for identifying the FM ground doublet.
///
/// The ferromagnetic parity doublet is not exactly degenerate at finite
/// coupling: tunneling splits it by roughly `j (delta/j)^n`, e.g. 3.7e-3 at
/// n = 3, j = 5. The doublet is still separated from the rest of the
/// spectrum by a gap two to three orders of magnitude larger, so levels are
/// clustered with the ground state while `E_k - E_0 <= 0.25 (E_{k+1} - E_0)`.
/// Antiferromagnetic spectra never trigger the rule (their ratio is ~1).
pub const CLUSTER_RATIO: f64 = 0.25;

/// Full eigendecomposition of a dense Hamiltonian: ascending eigenvalues and
/// orthonormal (real) eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    n: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Mat<f64>,
}

impl SpectrumResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Mat<f64> {
        &self.eigenvectors
    }

    /// The `k`-th eigenvector as a state vector.
    pub fn eigenstate(&self, k: usize) -> StateVector {
        let amps: Vec<Complex64> = (0..self.dim())
            .map(|b| Complex64::new(self.eigenvectors[(b, k)], 0.0))
            .collect();
        StateVector::new(self.n, amps).expect("eigenvector is normalized")
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Indices of all levels within the relative tolerance of the ground
    /// energy.
    pub fn ground_indices(&self, tol: f64) -> Vec<usize> {
        let e0 = self.eigenvalues[0];
        let cut = e0 + tol * e0.abs().max(1.0);
        self.eigenvalues.iter().take_while(|&&e| e <= cut).enumerate().map(|(i, _)| i).collect()
    }

    /// Size of the quasi-degenerate ground cluster under the scale-free
    /// `CLUSTER_RATIO` rule; identifies the two-fold FM ground doublet while
    /// leaving AFM ground states unique.
    pub fn ground_cluster_size(&self) -> usize {
        let ev = &self.eigenvalues;
        let mut k = 1usize;
        while k + 1 < ev.len() {
            let inner = ev[k] - ev[0];
            let outer = ev[k + 1] - ev[0];
            if inner <= CLUSTER_RATIO * outer {
                k += 1;
            } else {
                break;
            }
        }
        k
    }

    /// Gap from the quasi-degenerate ground cluster to the first level
    /// outside it.
    pub fn cluster_gap(&self) -> f64 {
        let k = self.ground_cluster_size();
        if k < self.eigenvalues.len() {
            self.eigenvalues[k] - self.eigenvalues[0]
        } else {
            0.0
        }
    }
}

/// Degenerate-level grouping of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport {
    /// `(representative energy, multiplicity)` per group, ascending.
    pub groups: Vec<(f64, usize)>,
    /// Energy gap between the ground group and the first excited group.
    pub gap: f64,
    /// Absolute tolerance that was used to merge levels.
    pub tolerance: f64,
}

/// Diagonalizes a dense Hamiltonian. Rejects inputs whose maximum asymmetry
/// exceeds 1e-10.
pub fn diagonalize(h: &DenseHamiltonian) -> Result<SpectrumResult> {
    let m = h.matrix();
    let dim = m.nrows();
    let mut asym = 0f64;
    for j in 0..dim {
        for i in (j + 1)..dim {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > 1e-10 {
        return Err(Error::NotHermitian(asym));
    }
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| evd.S()[a].partial_cmp(&evd.S()[b]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| evd.S()[k]).collect();
    let mut eigenvectors = Mat::<f64>::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..dim {
            eigenvectors[(row, col)] = evd.U()[(row, k)];
        }
    }
    Ok(SpectrumResult { n: h.n(), eigenvalues, eigenvectors })
}

/// Groups eigenvalues into degenerate levels; two adjacent levels merge when
/// they differ by at most `DEGENERACY_TOL * max(1, spectral width)`.
pub fn degeneracy_report(spectrum: &SpectrumResult) -> DegeneracyReport {
    let ev = spectrum.eigenvalues();
    let width = ev[ev.len() - 1] - ev[0];
    let tolerance = DEGENERACY_TOL * width.max(1.0);
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &e in ev {
        match groups.last_mut() {
            Some((rep, count)) if (e - *rep).abs() <= tolerance => *count += 1,
            _ => groups.push((e, 1)),
        }
    }
    let gap = if groups.len() > 1 { groups[1].0 - groups[0].0 } else { 0.0 };
    DegeneracyReport { groups, gap, tolerance }
}

/// Ground energy and ground state of a parameter specification.
pub fn ground_state(spec: &HamiltonianSpec) -> Result<(f64, StateVector)> {
    let spectrum = diagonalize(&build_pairwise(spec)?)?;
    Ok((spectrum.ground_energy(), spectrum.eigenstate(0)))
}

/// Orthonormal basis of the (possibly degenerate) ground subspace: all
/// eigenvectors with `E - E0 <= tol * max(1, |E0|)`.
pub fn ground_subspace(spec: &HamiltonianSpec, tol: f64) -> Result<Vec<StateVector>> {
    let spectrum = diagonalize(&build_pairwise(spec)?)?;
    Ok(spectrum.ground_indices(tol).into_iter().map(|k| spectrum.eigenstate(k)).collect())
}

/// Orthonormal basis of the quasi-degenerate ground cluster (the FM parity
/// doublet when one exists, otherwise just the ground state).
pub fn ground_cluster_subspace(spec: &HamiltonianSpec) -> Result<Vec<StateVector>> {
    let spectrum = diagonalize(&build_pairwise(spec)?)?;
    Ok((0..spectrum.ground_cluster_size()).map(|k| spectrum.eigenstate(k)).collect())
}

/// Norm of the projection of `phi` onto the span of an orthonormal basis:
/// `sqrt(sum_b |<b|phi>|^2)`. Reduces to `fidelity` for one-dimensional
/// subspaces.
pub fn subspace_fidelity(basis: &[StateVector], phi: &StateVector) -> Result<f64> {
    if basis.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut max_dev = 0f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let ip = crate::hilbert::inner(a, b)?;
            let target = if i == j { 1.0 } else { 0.0 };
            max_dev = max_dev.max((ip - Complex64::new(target, 0.0)).norm());
        }
    }
    if max_dev > 1e-8 {
        return Err(Error::NotOrthonormal(max_dev));
    }
    let mut s = 0f64;
    for b in basis {
        s += crate::hilbert::inner(b, phi)?.norm_sqr();
    }
    Ok(s.sqrt().min(1.0))
}

/// Gap between the ground group and the first excited group for each
/// coupling strength in `j_grid`, for the homogeneous network. Uses the
/// quasi-degenerate cluster rule so the FM parity doublet counts as a single
/// ground group.
pub fn gap_curve(n: usize, delta: f64, j_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if j_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    j_grid
        .iter()
        .map(|&j| {
            let spec = HamiltonianSpec::homogeneous(n, delta, j)?;
            let spectrum = diagonalize(&build_pairwise(&spec)?)?;
            Ok((j, spectrum.cluster_gap()))
        })
        .collect()
}
