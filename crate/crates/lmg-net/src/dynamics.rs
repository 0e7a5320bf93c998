//! Exact unitary evolution via spectral decomposition, the analytic
//! weak-coupling one-excitation law, and fidelity / entanglement time traces.

use crate::entanglement::{block_entropy, log_negativity};
use crate::hamiltonian::{build_pairwise, HamiltonianSpec};
use crate::hilbert::{fidelity, qubit_mask, StateVector};
use crate::spectra::{diagonalize, SpectrumResult};
use crate::{Error, Result};
use num_complex::Complex64;

/// `psi(t) = sum_n e^(-i E_n t) |n><n|psi0>`, exact for any `t`.
pub fn evolve(spectrum: &SpectrumResult, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if psi0.n() != spectrum.n() {
        return Err(Error::DimensionMismatch(psi0.n(), spectrum.n()));
    }
    let dim = spectrum.dim();
    let v = spectrum.eigenvectors();
    // Coefficients in the eigenbasis (V is real orthogonal).
    let mut coeffs = vec![Complex64::ZERO; dim];
    for (n, c) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for b in 0..dim {
            acc += v[(b, n)] * psi0.amp(b);
        }
        *c = acc;
    }
    for (n, c) in coeffs.iter_mut().enumerate() {
        *c *= Complex64::from_polar(1.0, -spectrum.eigenvalues()[n] * t);
    }
    let mut amps = vec![Complex64::ZERO; dim];
    for (b, amp) in amps.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for (n, c) in coeffs.iter().enumerate() {
            acc += v[(b, n)] * c;
        }
        *amp = acc;
    }
    StateVector::new(spectrum.n(), amps)
}

/// Energy expectation value `<psi|H|psi>` through the spectral decomposition.
pub fn energy_expectation(spectrum: &SpectrumResult, psi: &StateVector) -> Result<f64> {
    if psi.n() != spectrum.n() {
        return Err(Error::DimensionMismatch(psi.n(), spectrum.n()));
    }
    let dim = spectrum.dim();
    let v = spectrum.eigenvectors();
    let mut e = 0f64;
    for n in 0..dim {
        let mut acc = Complex64::ZERO;
        for b in 0..dim {
            acc += v[(b, n)] * psi.amp(b);
        }
        e += spectrum.eigenvalues()[n] * acc.norm_sqr();
    }
    Ok(e)
}

/// Closed-form weak-coupling evolution of one excitation on qubit 1 within
/// the spin-wave band:
/// `|psi(t)> = |SEP1> + ((e^(i n j t) - 1) / sqrt(n)) |W_n>`
/// (exactly normalized; the cross term cancels the |a|^2/n contribution).
/// Valid for `j << delta / n`; periodic in `t` with period `2 pi / (n j)`.
pub fn analytic_one_excitation(n: usize, j: f64, t: f64) -> Result<StateVector> {
    crate::check_qubit_count(n)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    let a = if j == 0.0 {
        Complex64::ZERO
    } else {
        (Complex64::from_polar(1.0, n as f64 * j * t) - 1.0) / (n as f64).sqrt()
    };
    let w_amp = a / (n as f64).sqrt();
    amps[qubit_mask(1, n)] = 1.0 + w_amp;
    for q in 2..=n {
        amps[qubit_mask(q, n)] = w_amp;
    }
    StateVector::new(n, amps)
}

/// Sampled observables along an exact evolution.
#[derive(Debug, Clone, Default)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    pub target_names: Vec<String>,
    /// `fidelities[k][target]` at `times[k]`.
    pub fidelities: Vec<Vec<f64>>,
    pub pairs: Vec<(usize, usize)>,
    /// `pair_negativities[k][pair]` at `times[k]`.
    pub pair_negativities: Vec<Vec<f64>>,
    pub blocks: Vec<Vec<usize>>,
    /// `block_entropies[k][block]` at `times[k]`.
    pub block_entropies: Vec<Vec<f64>>,
}

fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || t_max <= 0.0 {
        return Err(Error::BadTimeGrid);
    }
    Ok((0..steps).map(|i| t_max * i as f64 / (steps - 1) as f64).collect())
}

/// Evolves `psi0` on a uniform time grid, sampling fidelities against named
/// targets plus optional pair negativities and block entropies.
pub fn evolution_trace(
    spectrum: &SpectrumResult,
    psi0: &StateVector,
    targets: &[(String, StateVector)],
    pairs: &[(usize, usize)],
    blocks: &[Vec<usize>],
    t_max: f64,
    steps: usize,
) -> Result<EvolutionTrace> {
    let times = time_grid(t_max, steps)?;
    let mut trace = EvolutionTrace {
        times: times.clone(),
        target_names: targets.iter().map(|(name, _)| name.clone()).collect(),
        pairs: pairs.to_vec(),
        blocks: blocks.to_vec(),
        ..Default::default()
    };
    for &t in &times {
        let psi = evolve(spectrum, psi0, t)?;
        let fids = targets
            .iter()
            .map(|(_, target)| fidelity(&psi, target))
            .collect::<Result<Vec<_>>>()?;
        trace.fidelities.push(fids);
        let negs = pairs
            .iter()
            .map(|&(i, j)| log_negativity(&psi, i, j))
            .collect::<Result<Vec<_>>>()?;
        trace.pair_negativities.push(negs);
        let ents = blocks
            .iter()
            .map(|block| block_entropy(&psi, block))
            .collect::<Result<Vec<_>>>()?;
        trace.block_entropies.push(ents);
    }
    Ok(trace)
}

/// Fidelity-only trace against a list of targets.
pub fn fidelity_trace(
    spectrum: &SpectrumResult,
    psi0: &StateVector,
    targets: &[(String, StateVector)],
    t_max: f64,
    steps: usize,
) -> Result<EvolutionTrace> {
    evolution_trace(spectrum, psi0, targets, &[], &[], t_max, steps)
}

/// Entanglement-only trace: pair negativities and block entropies.
pub fn entanglement_trace(
    spectrum: &SpectrumResult,
    psi0: &StateVector,
    pairs: &[(usize, usize)],
    blocks: &[Vec<usize>],
    t_max: f64,
    steps: usize,
) -> Result<EvolutionTrace> {
    evolution_trace(spectrum, psi0, &[], pairs, blocks, t_max, steps)
}

/// Result of a fidelity maximization over coupling strength and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxFidelity {
    pub best_j: f64,
    pub best_t: f64,
    pub fidelity: f64,
}

fn golden_section_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..64 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    if fx >= fc && fx >= fd {
        (x, fx)
    } else if fc >= fd {
        (b - INV_PHI * (b - a), fc)
    } else {
        (a + INV_PHI * (b - a), fd)
    }
}

/// Maximum fidelity against `target` over `t in [0, t_max]`: dense grid scan
/// followed by golden-section refinement around the best sample.
pub fn max_fidelity_in_time(
    spectrum: &SpectrumResult,
    psi0: &StateVector,
    target: &StateVector,
    t_max: f64,
    steps: usize,
) -> Result<(f64, f64)> {
    let times = time_grid(t_max, steps)?;
    let mut best = (0usize, -1f64);
    for (k, &t) in times.iter().enumerate() {
        let f = fidelity(&evolve(spectrum, psi0, t)?, target)?;
        if f > best.1 {
            best = (k, f);
        }
    }
    let dt = t_max / (steps - 1) as f64;
    let lo = (times[best.0] - dt).max(0.0);
    let hi = (times[best.0] + dt).min(t_max);
    let (t_star, f_star) = golden_section_max(
        |t| {
            fidelity(&evolve(spectrum, psi0, t).expect("grid bounds"), target)
                .expect("same dimension")
        },
        lo,
        hi,
    );
    if f_star >= best.1 {
        Ok((t_star, f_star))
    } else {
        Ok((times[best.0], best.1))
    }
}

/// Global maximum fidelity over a coupling grid and a time window, with
/// golden-section refinement in both the best time and the best coupling.
pub fn max_fidelity_over_j(
    n: usize,
    delta: f64,
    j_grid: &[f64],
    psi0: &StateVector,
    target: &StateVector,
    t_max: f64,
    steps: usize,
) -> Result<MaxFidelity> {
    if j_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let eval = |j: f64| -> Result<(f64, f64)> {
        let spec = HamiltonianSpec::homogeneous(n, delta, j)?;
        let spectrum = diagonalize(&build_pairwise(&spec)?)?;
        max_fidelity_in_time(&spectrum, psi0, target, t_max, steps)
    };
    let mut best_idx = 0usize;
    let mut best: Option<(f64, f64)> = None;
    for (idx, &j) in j_grid.iter().enumerate() {
        let (t, f) = eval(j)?;
        if best.map_or(true, |(_, fb)| f > fb) {
            best = Some((t, f));
            best_idx = idx;
        }
    }
    let (mut best_t, mut best_f) = best.expect("non-empty grid");
    let mut best_j = j_grid[best_idx];
    if j_grid.len() > 1 {
        let lo = j_grid[best_idx.saturating_sub(1)];
        let hi = j_grid[(best_idx + 1).min(j_grid.len() - 1)];
        if hi > lo {
            let (j_star, f_star) =
                golden_section_max(|j| eval(j).map(|(_, f)| f).unwrap_or(-1.0), lo, hi);
            if f_star > best_f {
                let (t_star, f_check) = eval(j_star)?;
                best_j = j_star;
                best_t = t_star;
                best_f = f_check;
            }
        }
    }
    Ok(MaxFidelity { best_j, best_t, fidelity: best_f })
}
