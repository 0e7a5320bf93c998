//! State vectors, basis conventions, Pauli algebra, reference states, partial
//! trace, and partial transpose.
//!
//! Basis convention, fixed once for the whole crate: the computational basis
//! index of an n-qubit product state is `b = sum_i bit_i * 2^(n-i)`, i.e.
//! qubit 1 is the most-significant bit. `bit_i = 0` corresponds to `|0>_i`
//! with `Z_i |0> = +|0>`, and `|+-> = (|0> +- |1>) / sqrt(2)`.

use crate::{check_qubit_count, Error, Result};
use faer::Mat;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

const NORM_TOL: f64 = 1e-10;

/// Bit mask selecting qubit `q` (1-based, MSB-first) in an `n`-qubit index.
#[inline]
pub fn qubit_mask(q: usize, n: usize) -> usize {
    1 << (n - q)
}

/// The bit of qubit `q` in basis index `b`.
#[inline]
pub fn qubit_bit(b: usize, q: usize, n: usize) -> usize {
    (b >> (n - q)) & 1
}

/// A normalized pure state of `n` qubits, stored as 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized; rejects vectors whose
    /// norm deviates from 1 by more than 1e-10, then renormalizes exactly.
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if amps.len() != dim {
            return Err(Error::AmplitudeCount { n, expected: dim, got: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let mut v = Self { n, amps };
        v.renormalize(norm);
        Ok(v)
    }

    /// Normalizes an arbitrary non-zero vector.
    pub fn from_unnormalized(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if amps.len() != dim {
            return Err(Error::AmplitudeCount { n, expected: dim, got: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::ZeroVector);
        }
        let mut v = Self { n, amps };
        v.renormalize(norm);
        Ok(v)
    }

    /// The computational basis state with index `b`.
    pub fn basis_state(n: usize, b: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if b >= dim {
            return Err(Error::AmplitudeCount { n, expected: dim, got: b });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[b] = Complex64::ONE;
        Ok(Self { n, amps })
    }

    fn renormalize(&mut self, norm: f64) {
        if norm != 1.0 {
            let inv = 1.0 / norm;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, b: usize) -> Complex64 {
        self.amps[b]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The named reference states the ground-state and dynamics analyses compare
/// against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceState {
    /// `|0>^N`, the fully-separable ground state of the uncoupled network.
    Sep,
    /// `|1> (x) |0>^(N-1)`, one excitation on qubit 1.
    Sep1,
    /// `(|+>^N + |->^N) / sqrt(2)`.
    Ghz,
    /// `(|+-0> + |-0+> + |0+->) / sqrt(3)`, the N = 3 frustrated AFM ground
    /// state.
    Ent3,
    /// `|W_N> = (1/sqrt(N)) sum_j |0..1_j..0>`.
    W,
    /// `e^(+-i pi/6)/sqrt(3) |100> + e^(+-5i pi/6)/sqrt(3) (|010> + |001>)`.
    WVariant3(Sign),
    /// `(-|1000> + |0100> + |0010> + |0001>) / 2`.
    WVariant4,
    /// Spin-wave one-excitation state `(1/sqrt(N)) sum_j e^(2 pi i j k / N) |..1_j..>`.
    SpinWave(usize),
}

impl ReferenceState {
    pub fn name(&self) -> String {
        match self {
            Self::Sep => "SEP".into(),
            Self::Sep1 => "SEP1".into(),
            Self::Ghz => "GHZ".into(),
            Self::Ent3 => "ENT3".into(),
            Self::W => "W".into(),
            Self::WVariant3(Sign::Plus) => "W3+".into(),
            Self::WVariant3(Sign::Minus) => "W3-".into(),
            Self::WVariant4 => "W4".into(),
            Self::SpinWave(k) => format!("SW{k}"),
        }
    }
}

impl std::str::FromStr for ReferenceState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "SEP" => Ok(Self::Sep),
            "SEP1" => Ok(Self::Sep1),
            "GHZ" => Ok(Self::Ghz),
            "ENT3" => Ok(Self::Ent3),
            "W" => Ok(Self::W),
            "W3+" => Ok(Self::WVariant3(Sign::Plus)),
            "W3-" => Ok(Self::WVariant3(Sign::Minus)),
            "W4" => Ok(Self::WVariant4),
            _ => s
                .strip_prefix("SW")
                .and_then(|k| k.parse::<usize>().ok())
                .map(Self::SpinWave)
                .ok_or_else(|| format!("unknown reference state `{s}`")),
        }
    }
}

/// Builds a named reference state for `n` qubits in the computational basis.
pub fn make_reference(kind: ReferenceState, n: usize) -> Result<StateVector> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    let require = |required: usize| -> Result<()> {
        if n != required {
            Err(Error::IncompatibleReference { kind: kind.name(), required, got: n })
        } else {
            Ok(())
        }
    };
    match kind {
        ReferenceState::Sep => StateVector::basis_state(n, 0),
        ReferenceState::Sep1 => StateVector::basis_state(n, qubit_mask(1, n)),
        ReferenceState::Ghz => {
            // Expand (|+>^N + |->^N)/sqrt(2): only even-parity indices survive.
            let scale = FRAC_1_SQRT_2 / (dim as f64).sqrt();
            let amps = (0..dim)
                .map(|b| {
                    let parity = if b.count_ones() % 2 == 0 { 2.0 } else { 0.0 };
                    Complex64::new(scale * parity, 0.0)
                })
                .collect();
            StateVector::new(n, amps)
        }
        ReferenceState::Ent3 => {
            require(3)?;
            let plus = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
            let minus = [FRAC_1_SQRT_2, -FRAC_1_SQRT_2];
            let zero = [1.0, 0.0];
            let terms = [[plus, minus, zero], [minus, zero, plus], [zero, plus, minus]];
            let mut amps = vec![Complex64::ZERO; 8];
            for term in &terms {
                for (b, amp) in amps.iter_mut().enumerate() {
                    let x: f64 = (0..3).map(|q| term[q][qubit_bit(b, q + 1, 3)]).product();
                    *amp += Complex64::new(x / 3f64.sqrt(), 0.0);
                }
            }
            StateVector::new(3, amps)
        }
        ReferenceState::W => {
            let mut amps = vec![Complex64::ZERO; dim];
            let c = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            for j in 1..=n {
                amps[qubit_mask(j, n)] = c;
            }
            StateVector::new(n, amps)
        }
        ReferenceState::WVariant3(sign) => {
            require(3)?;
            let s = match sign {
                Sign::Plus => 1.0,
                Sign::Minus => -1.0,
            };
            let c = 1.0 / 3f64.sqrt();
            let head = Complex64::from_polar(c, s * PI / 6.0);
            let tail = Complex64::from_polar(c, s * 5.0 * PI / 6.0);
            let mut amps = vec![Complex64::ZERO; 8];
            amps[0b100] = head;
            amps[0b010] = tail;
            amps[0b001] = tail;
            StateVector::new(3, amps)
        }
        ReferenceState::WVariant4 => {
            require(4)?;
            let mut amps = vec![Complex64::ZERO; 16];
            amps[0b1000] = Complex64::new(-0.5, 0.0);
            amps[0b0100] = Complex64::new(0.5, 0.0);
            amps[0b0010] = Complex64::new(0.5, 0.0);
            amps[0b0001] = Complex64::new(0.5, 0.0);
            StateVector::new(4, amps)
        }
        ReferenceState::SpinWave(k) => {
            if k >= n {
                return Err(Error::SpinWaveIndex { k, max: n - 1 });
            }
            let mut amps = vec![Complex64::ZERO; dim];
            let c = 1.0 / (n as f64).sqrt();
            for j in 1..=n {
                let phase = 2.0 * PI * (j as f64) * (k as f64) / (n as f64);
                amps[qubit_mask(j, n)] = Complex64::from_polar(c, phase);
            }
            StateVector::new(n, amps)
        }
    }
}

/// `<a|b>` with conjugation on `a`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// `|<a|b>|`, clamped to [0, 1].
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(inner(a, b)?.norm().min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// Applies a single-qubit Pauli operator to `qubit` (1-based).
pub fn apply_pauli(psi: &StateVector, axis: PauliAxis, qubit: usize) -> Result<StateVector> {
    let n = psi.n;
    if qubit == 0 || qubit > n {
        return Err(Error::QubitIndex { index: qubit, n });
    }
    let mask = qubit_mask(qubit, n);
    let mut amps = vec![Complex64::ZERO; psi.dim()];
    match axis {
        PauliAxis::X => {
            for (b, &a) in psi.amps.iter().enumerate() {
                amps[b ^ mask] = a;
            }
        }
        PauliAxis::Y => {
            // Y|0> = i|1>, Y|1> = -i|0>.
            for (b, &a) in psi.amps.iter().enumerate() {
                let factor = if b & mask == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                };
                amps[b ^ mask] = factor * a;
            }
        }
        PauliAxis::Z => {
            for (b, &a) in psi.amps.iter().enumerate() {
                amps[b] = if b & mask == 0 { a } else { -a };
            }
        }
    }
    Ok(StateVector { n, amps })
}

/// A density matrix over an ordered subset of the network's qubits.
///
/// Hermiticity and unit trace are checked at construction; positivity is
/// checked wherever eigenvalues are actually computed.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    qubits: Vec<usize>,
    mat: Mat<Complex64>,
}

impl DensityMatrix {
    pub(crate) fn from_parts(qubits: Vec<usize>, mat: Mat<Complex64>) -> Result<Self> {
        let dim = 1usize << qubits.len();
        debug_assert_eq!(mat.nrows(), dim);
        debug_assert_eq!(mat.ncols(), dim);
        let mut asym = 0f64;
        for i in 0..dim {
            for j in 0..dim {
                asym = asym.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if asym > 1e-12 {
            return Err(Error::NotHermitian(asym));
        }
        let trace: Complex64 = (0..dim).map(|i| mat[(i, i)]).sum();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::NotNormalized(trace.norm()));
        }
        Ok(Self { qubits, mat })
    }

    /// Labels of the retained qubits, in row-index order (first label is the
    /// most-significant bit of the matrix index).
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Mat<Complex64> {
        &self.mat
    }

    pub fn element(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.mat[(i, i)]).sum()
    }
}

fn check_subset(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = vec![false; n + 1];
    for &q in keep {
        if q == 0 || q > n {
            return Err(Error::QubitIndex { index: q, n });
        }
        if seen[q] {
            return Err(Error::RepeatedLabel(q));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Spreads the bits of `x` (MSB-first over `positions`) into a basis index,
/// where `positions[m]` is the bit position from the LSB.
fn spread(x: usize, positions: &[usize]) -> usize {
    let k = positions.len();
    positions
        .iter()
        .enumerate()
        .map(|(m, &p)| ((x >> (k - 1 - m)) & 1) << p)
        .sum()
}

/// Reduced density matrix of a pure state over the `keep` qubits (1-based
/// labels). Keeping all qubits returns `|psi><psi|`.
pub fn partial_trace_state(psi: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = psi.n();
    check_subset(keep, n)?;
    let k = keep.len();
    let keep_pos: Vec<usize> = keep.iter().map(|&q| n - q).collect();
    let env_pos: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).map(|q| n - q).collect();
    let kd = 1usize << k;
    let ed = 1usize << (n - k);

    let spread_keep: Vec<usize> = (0..kd).map(|a| spread(a, &keep_pos)).collect();
    let spread_env: Vec<usize> = (0..ed).map(|e| spread(e, &env_pos)).collect();

    let mut mat = Mat::<Complex64>::zeros(kd, kd);
    for a in 0..kd {
        for b in 0..kd {
            let mut acc = Complex64::ZERO;
            for &se in &spread_env {
                acc += psi.amp(spread_keep[a] | se) * psi.amp(spread_keep[b] | se).conj();
            }
            mat[(a, b)] = acc;
        }
    }
    DensityMatrix::from_parts(keep.to_vec(), mat)
}

/// Traces a density matrix down to the `keep` qubits, which must be labels it
/// already carries.
pub fn partial_trace_dm(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    let labels = rho.qubits();
    let m = labels.len();
    let pos_of = |q: usize| -> Result<usize> {
        labels
            .iter()
            .position(|&l| l == q)
            .map(|p| m - 1 - p)
            .ok_or(Error::LabelMismatch { label: q })
    };
    let mut keep_pos = Vec::with_capacity(keep.len());
    for &q in keep {
        if keep.iter().filter(|&&x| x == q).count() > 1 {
            return Err(Error::RepeatedLabel(q));
        }
        keep_pos.push(pos_of(q)?);
    }
    let env_pos: Vec<usize> = labels
        .iter()
        .filter(|q| !keep.contains(q))
        .map(|&q| pos_of(q).expect("label present"))
        .collect();
    let kd = 1usize << keep.len();
    let ed = 1usize << env_pos.len();
    let mut mat = Mat::<Complex64>::zeros(kd, kd);
    for a in 0..kd {
        let sa = spread(a, &keep_pos);
        for b in 0..kd {
            let sb = spread(b, &keep_pos);
            let mut acc = Complex64::ZERO;
            for e in 0..ed {
                let se = spread(e, &env_pos);
                acc += rho.mat[(sa | se, sb | se)];
            }
            mat[(a, b)] = acc;
        }
    }
    DensityMatrix::from_parts(keep.to_vec(), mat)
}

/// Partial transpose of `rho` on `subsystem`; Hermitian and trace-preserving
/// but possibly non-positive.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &[usize]) -> Result<Mat<Complex64>> {
    let labels = rho.qubits();
    let m = labels.len();
    let mut sub_mask = 0usize;
    for &q in subsystem {
        let p = labels
            .iter()
            .position(|&l| l == q)
            .ok_or(Error::LabelMismatch { label: q })?;
        sub_mask |= 1 << (m - 1 - p);
    }
    Ok(transpose_bits(&rho.mat, sub_mask))
}

/// Partial transpose acting directly on a matrix; `sub_mask` selects the bit
/// positions (from the LSB of the index) to swap between row and column.
pub fn transpose_bits(mat: &Mat<Complex64>, sub_mask: usize) -> Mat<Complex64> {
    let dim = mat.nrows();
    let mut out = Mat::<Complex64>::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let r2 = (r & !sub_mask) | (c & sub_mask);
            let c2 = (c & !sub_mask) | (r & sub_mask);
            out[(r, c)] = mat[(r2, c2)];
        }
    }
    out
}
