//! Exact-diagonalization toolkit for a fully-connected network of qubits with
//! transverse XX couplings, the finite Lipkin-Meshkov-Glick model
//!
//! ```text
//! H = -sum_i (delta_i / 2) Z_i - sum_{i<j} J_ij X_i X_j + sum_i g_i X_i
//! ```
//!
//! The crate covers ground-state structure, low-lying spectra, pairwise and
//! block entanglement (logarithmic negativity, von Neumann entropy), exact
//! unitary dynamics, and quenched-disorder ensembles (uniform-interval and
//! Gaussian Sherrington-Kirkpatrick couplings). Everything is dense and aimed
//! at desk scale, N <= 14.

pub mod disorder;
pub mod dynamics;
pub mod entanglement;
pub mod hamiltonian;
pub mod hilbert;
pub mod spectra;

pub use disorder::{DisorderConfig, DisorderFamily, EnsembleStats, ObservableStats};
pub use dynamics::{analytic_one_excitation, evolve, fidelity_trace, EvolutionTrace, MaxFidelity};
pub use entanglement::{block_entropy, ground_entanglement_scan, log_negativity};
pub use hamiltonian::{build_collective, build_pairwise, DenseHamiltonian, HamiltonianSpec};
pub use hilbert::{
    apply_pauli, fidelity, inner, make_reference, partial_trace_dm, partial_trace_state,
    partial_transpose, DensityMatrix, PauliAxis, ReferenceState, Sign, StateVector,
};
pub use spectra::{
    diagonalize, ground_cluster_subspace, ground_state, ground_subspace, subspace_fidelity,
    DegeneracyReport, SpectrumResult,
};

/// Hard cap on the qubit count; 2^14 amplitudes is the largest dense problem
/// this crate is meant to handle.
pub const MAX_QUBITS: usize = 14;

/// Relative tolerance used to group eigenvalues into degenerate levels.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("qubit count {0} outside the supported range 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("expected {expected} amplitudes for {n} qubits, got {got}")]
    AmplitudeCount { n: usize, expected: usize, got: usize },
    #[error("state norm {0} differs from 1 by more than 1e-10")]
    NotNormalized(f64),
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("qubit index {index} out of range 1..={n}")]
    QubitIndex { index: usize, n: usize },
    #[error("qubit counts differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("reference state {kind} requires n = {required}, got n = {got}")]
    IncompatibleReference { kind: String, required: usize, got: usize },
    #[error("spin-wave index k = {k} out of range 0..={max}")]
    SpinWaveIndex { k: usize, max: usize },
    #[error("qubit subset must be non-empty")]
    EmptySubset,
    #[error("qubit subset contains a repeated label {0}")]
    RepeatedLabel(usize),
    #[error("label {label} is not a qubit of this density matrix")]
    LabelMismatch { label: usize },
    #[error("subset must be a strict, non-empty subset of the {n} qubits")]
    InvalidBlock { n: usize },
    #[error("coupling matrix must be {n}x{n}, symmetric, with zero diagonal")]
    BadCouplings { n: usize },
    #[error("level splittings must all be positive")]
    BadDeltas,
    #[error("matrix is not Hermitian: max asymmetry {0:.3e} exceeds 1e-10")]
    NotHermitian(f64),
    #[error("eigendecomposition failed to converge")]
    EigenFailure,
    #[error("basis vectors are not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("density matrix eigenvalue {0:.3e} below -1e-10; not positive semidefinite")]
    NotPositive(f64),
    #[error("disorder fraction {0} outside [0, 1]")]
    BadDisorderFraction(f64),
    #[error("realization count must be at least 1")]
    NoRealizations,
    #[error("realization index {index} out of range 0..{count}")]
    RealizationIndex { index: usize, count: usize },
    #[error("observable extractor returned {got} values at realization {index}, expected {expected}")]
    ObservableArity { index: usize, expected: usize, got: usize },
    #[error("realization {index} failed: {source}")]
    Realization {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("time grid needs at least 2 samples")]
    BadTimeGrid,
    #[error("empty parameter grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(())
}
