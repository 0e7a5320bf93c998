//! Quenched-disorder ensembles: uniform-interval disorder on couplings and
//! splittings, Gaussian Sherrington-Kirkpatrick couplings, and deterministic
//! seeded ensemble statistics.
//!
//! Reproducibility contract: realization `i` draws from a ChaCha12 stream
//! seeded by `splitmix64(master_seed ^ splitmix64(i + 1))`, so ensembles are
//! order-independent and identical across platforms and thread counts.

use crate::hamiltonian::HamiltonianSpec;
use crate::{check_qubit_count, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderFamily {
    /// `J_ij = u_ij J` with `u ~ U[1-d1, 1+d1]` i.i.d. per unordered pair and
    /// `delta_i = v_i delta` with `v ~ U[1-d2, 1+d2]`.
    UniformInterval,
    /// Sherrington-Kirkpatrick: `J_ij ~ N(0, sk_std^2)` i.i.d. per pair,
    /// `delta_i = delta`.
    GaussianSk,
}

/// Parameters of a quenched-disorder ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub family: DisorderFamily,
    pub n: usize,
    /// Coupling disorder fraction, in [0, 1].
    #[serde(default)]
    pub delta1: f64,
    /// Splitting disorder fraction, in [0, 1].
    #[serde(default)]
    pub delta2: f64,
    pub base_j: f64,
    pub base_delta: f64,
    /// Standard deviation of Gaussian SK couplings; defaults to
    /// `|base_j| / sqrt(n)` (extensive-energy SK scaling).
    #[serde(default)]
    pub sk_std: Option<f64>,
    pub realizations: usize,
    pub master_seed: u64,
}

impl DisorderConfig {
    pub fn validate(&self) -> Result<()> {
        check_qubit_count(self.n)?;
        for d in [self.delta1, self.delta2] {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::BadDisorderFraction(d));
            }
        }
        if self.realizations == 0 {
            return Err(Error::NoRealizations);
        }
        if self.base_delta <= 0.0 || !self.base_delta.is_finite() {
            return Err(Error::BadDeltas);
        }
        Ok(())
    }

    pub fn sk_std(&self) -> f64 {
        self.sk_std.unwrap_or(self.base_j.abs() / (self.n as f64).sqrt())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn realization_rng(master_seed: u64, index: usize) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(splitmix64(master_seed ^ splitmix64(index as u64 + 1)))
}

/// Draws the Hamiltonian of realization `index`. Deterministic: the same
/// `(master_seed, index)` always yields the same spec.
///
/// Draw order within a realization is fixed: couplings for pairs (1,2),
/// (1,3), ..., (n-1,n) row-major, then splittings for qubits 1..n.
pub fn sample_spec(cfg: &DisorderConfig, index: usize) -> Result<HamiltonianSpec> {
    cfg.validate()?;
    if index >= cfg.realizations {
        return Err(Error::RealizationIndex { index, count: cfg.realizations });
    }
    let n = cfg.n;
    let mut rng = realization_rng(cfg.master_seed, index);
    let mut couplings = vec![vec![0.0; n]; n];
    match cfg.family {
        DisorderFamily::UniformInterval => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let u = if cfg.delta1 == 0.0 {
                        1.0
                    } else {
                        rng.random_range(1.0 - cfg.delta1..=1.0 + cfg.delta1)
                    };
                    couplings[i][j] = u * cfg.base_j;
                    couplings[j][i] = couplings[i][j];
                }
            }
            let deltas = (0..n)
                .map(|_| {
                    if cfg.delta2 == 0.0 {
                        cfg.base_delta
                    } else {
                        rng.random_range(1.0 - cfg.delta2..=1.0 + cfg.delta2) * cfg.base_delta
                    }
                })
                .collect();
            HamiltonianSpec::new(deltas, couplings, vec![0.0; n])
        }
        DisorderFamily::GaussianSk => {
            let normal = Normal::new(0.0, cfg.sk_std()).expect("finite std");
            for i in 0..n {
                for j in (i + 1)..n {
                    couplings[i][j] = normal.sample(&mut rng);
                    couplings[j][i] = couplings[i][j];
                }
            }
            HamiltonianSpec::new(vec![cfg.base_delta; n], couplings, vec![0.0; n])
        }
    }
}

/// Per-observable summary over an ensemble. `std` is the population standard
/// deviation, so a single realization reports zero spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableStats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub observables: Vec<ObservableStats>,
    pub realizations: usize,
    /// Per-realization observable rows, in realization order.
    pub samples: Vec<Vec<f64>>,
}

/// Runs `extractor` on every realization of the ensemble and reduces to
/// per-observable statistics. Bitwise reproducible for a fixed config.
pub fn run_ensemble<F>(cfg: &DisorderConfig, extractor: F) -> Result<EnsembleStats>
where
    F: Fn(&HamiltonianSpec) -> Result<Vec<f64>>,
{
    cfg.validate()?;
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(cfg.realizations);
    let mut arity: Option<usize> = None;
    for index in 0..cfg.realizations {
        let spec = sample_spec(cfg, index)?;
        let row = extractor(&spec)
            .map_err(|e| Error::Realization { index, source: Box::new(e) })?;
        match arity {
            None => arity = Some(row.len()),
            Some(k) if k != row.len() => {
                return Err(Error::ObservableArity { index, expected: k, got: row.len() })
            }
            _ => {}
        }
        samples.push(row);
    }
    let k = arity.unwrap_or(0);
    let m = cfg.realizations as f64;
    let observables = (0..k)
        .map(|obs| {
            let xs: Vec<f64> = samples.iter().map(|row| row[obs]).collect();
            let mean = xs.iter().sum::<f64>() / m;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / m;
            ObservableStats {
                mean,
                std: var.sqrt(),
                min: xs.iter().cloned().fold(f64::INFINITY, f64::min),
                max: xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                n: cfg.realizations,
            }
        })
        .collect();
    Ok(EnsembleStats { observables, realizations: cfg.realizations, samples })
}
