//! One function per subcommand. Every command reads an [`ExperimentConfig`],
//! runs the corresponding library routine, and writes CSV/JSON artifacts with
//! fixed numeric formatting so outputs are byte-identical across runs and
//! thread counts.

use std::fs;
use std::path::Path;

use lmg_net::dynamics;
use lmg_net::entanglement::{self, representative_ground};
use lmg_net::hamiltonian::{build_pairwise, HamiltonianSpec};
use lmg_net::hilbert::{fidelity, make_reference, ReferenceState, StateVector};
use lmg_net::spectra::{diagonalize, subspace_fidelity, SpectrumResult};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

/// 17 significant digits; enough to round-trip any f64 exactly.
fn fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn parse_reference(name: &str) -> Result<ReferenceState> {
    name.parse::<ReferenceState>()
        .map_err(|_| CliError::Config(format!("unknown reference state {name:?}")))
}

fn spec_for(cfg: &ExperimentConfig, j: f64, perturbed: bool) -> Result<HamiltonianSpec> {
    let n = cfg.require_n()?;
    let mut spec = HamiltonianSpec::homogeneous(n, cfg.delta, j)?;
    if perturbed {
        let p = cfg
            .perturbation
            .ok_or_else(|| CliError::Config("perturbation: required".into()))?;
        spec = spec.with_perturbation(p.qubit, p.g)?;
    }
    Ok(spec)
}

fn spectrum_for(cfg: &ExperimentConfig, j: f64, perturbed: bool) -> Result<SpectrumResult> {
    Ok(diagonalize(&build_pairwise(&spec_for(cfg, j, perturbed)?)?)?)
}

fn ground_cluster_basis(spectrum: &SpectrumResult) -> Vec<StateVector> {
    (0..spectrum.ground_cluster_size()).map(|k| spectrum.eigenstate(k)).collect()
}

/// `ground-scan`: ground-state fidelity against SEP/GHZ (and ENT3 for N = 3)
/// over a J grid. The unperturbed columns use the fidelity with the full
/// (near-)degenerate ground subspace; when a perturbation is configured, a
/// second column set reports the plain fidelity of the now-unique ground
/// state.
pub fn cmd_ground_scan(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let n = cfg.require_n()?;
    let grid = cfg.require_j()?.grid()?;
    let refs: Vec<(&str, StateVector)> = {
        let mut v = vec![
            ("fid_SEP", make_reference(ReferenceState::Sep, n)?),
            ("fid_GHZ", make_reference(ReferenceState::Ghz, n)?),
        ];
        if n == 3 {
            v.push(("fid_ENT3", make_reference(ReferenceState::Ent3, n)?));
        }
        v
    };
    let perturbed = cfg.perturbation.is_some();

    let rows: Vec<Result<Vec<f64>>> = grid
        .par_iter()
        .map(|&j| {
            let mut row = vec![j];
            let basis = ground_cluster_basis(&spectrum_for(cfg, j, false)?);
            for (_, target) in &refs {
                row.push(subspace_fidelity(&basis, target)?);
            }
            if perturbed {
                let ground = spectrum_for(cfg, j, true)?.eigenstate(0);
                for (_, target) in &refs {
                    row.push(fidelity(&ground, target)?);
                }
            }
            Ok(row)
        })
        .collect();

    let mut out = String::from("J");
    for (name, _) in &refs {
        out.push(',');
        out.push_str(name);
    }
    if perturbed {
        for (name, _) in &refs {
            out.push(',');
            out.push_str(name);
            out.push_str("_pert");
        }
    }
    out.push('\n');
    for row in rows {
        let row = row?;
        let cells: Vec<String> = row.iter().map(|&x| fmt(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_text(Path::new(&format!("{prefix}.csv")), &out)
}

/// `spectrum`: rows `(J, level_index, energy)`; the full spectrum for N = 3,
/// the lowest 2^(N-1) levels otherwise.
pub fn cmd_spectrum(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let n = cfg.require_n()?;
    let grid = cfg.require_j()?.grid()?;
    let levels = if n == 3 { 1usize << n } else { 1usize << (n - 1) };

    let blocks: Vec<Result<Vec<(f64, usize, f64)>>> = grid
        .par_iter()
        .map(|&j| {
            let spectrum = spectrum_for(cfg, j, cfg.perturbation.is_some())?;
            Ok((0..levels.min(spectrum.dim()))
                .map(|k| (j, k, spectrum.eigenvalues()[k]))
                .collect())
        })
        .collect();

    let mut out = String::from("J,level_index,energy\n");
    for block in blocks {
        for (j, k, e) in block? {
            out.push_str(&fmt(j));
            out.push(',');
            out.push_str(&k.to_string());
            out.push(',');
            out.push_str(&fmt(e));
            out.push('\n');
        }
    }
    write_text(Path::new(&format!("{prefix}.csv")), &out)
}

/// `entanglement-scan`: pair negativity and single-qubit entropy of the
/// representative ground state against J.
pub fn cmd_entanglement_scan(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let n = cfg.require_n()?;
    let grid = cfg.require_j()?.grid()?;
    let g = match cfg.perturbation {
        None => None,
        Some(p) if p.qubit == 1 => Some(p.g),
        Some(_) => {
            return Err(CliError::Config("perturbation.qubit: entanglement-scan perturbs qubit 1".into()))
        }
    };

    let rows: Vec<Result<entanglement::ScanRow>> = grid
        .par_iter()
        .map(|&j| {
            let scan = entanglement::ground_entanglement_scan(n, cfg.delta, &[j], g)?;
            Ok(scan.into_iter().next().expect("one-point grid"))
        })
        .collect();

    let mut out = String::from("J,N,E_N_pair,S_single,perturbed\n");
    for row in rows {
        let row = row?;
        out.push_str(&fmt(row.j));
        out.push(',');
        out.push_str(&n.to_string());
        out.push(',');
        out.push_str(&fmt(row.e_n_pair));
        out.push(',');
        out.push_str(&fmt(row.s_single));
        out.push(',');
        out.push_str(if row.perturbed { "true" } else { "false" });
        out.push('\n');
    }
    write_text(Path::new(&format!("{prefix}.csv")), &out)
}

/// `evolve`: per-time fidelities against the named targets plus the (1,2)
/// pair negativity and single-qubit entropy. Writes `<prefix>.csv` and a
/// `<prefix>.meta.json` echo of the run parameters.
pub fn cmd_evolve(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let n = cfg.require_n()?;
    let j = cfg.require_j()?.scalar()?;
    let time = cfg.require_time()?;
    let initial_name = cfg.require_initial_state()?.to_string();
    let psi0 = make_reference(parse_reference(&initial_name)?, n)?;
    let targets = cfg
        .require_targets()?
        .iter()
        .map(|name| Ok((name.clone(), make_reference(parse_reference(name)?, n)?)))
        .collect::<Result<Vec<_>>>()?;

    let spectrum = spectrum_for(cfg, j, cfg.perturbation.is_some())?;
    let pairs: Vec<(usize, usize)> = if n >= 2 { vec![(1, 2)] } else { vec![] };
    let blocks: Vec<Vec<usize>> = if n >= 2 { vec![vec![1]] } else { vec![] };
    let trace =
        dynamics::evolution_trace(&spectrum, &psi0, &targets, &pairs, &blocks, time.t_max, time.steps)?;

    let mut out = String::from("t");
    for name in &trace.target_names {
        out.push_str(",fid_");
        out.push_str(name);
    }
    for &(a, b) in &trace.pairs {
        out.push_str(&format!(",E_N_{a}_{b}"));
    }
    for block in &trace.blocks {
        let label: Vec<String> = block.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!(",S_{}", label.join("_")));
    }
    out.push('\n');
    for k in 0..trace.times.len() {
        out.push_str(&fmt(trace.times[k]));
        for &f in &trace.fidelities[k] {
            out.push(',');
            out.push_str(&fmt(f));
        }
        for &e in &trace.pair_negativities[k] {
            out.push(',');
            out.push_str(&fmt(e));
        }
        for &s in &trace.block_entropies[k] {
            out.push(',');
            out.push_str(&fmt(s));
        }
        out.push('\n');
    }
    write_text(Path::new(&format!("{prefix}.csv")), &out)?;

    let meta = json!({
        "n": n,
        "delta": cfg.delta,
        "j": j,
        "perturbation": cfg.perturbation,
        "initial_state": initial_name,
        "targets": trace.target_names,
        "time": { "t_max": time.t_max, "steps": time.steps },
    });
    write_text(
        Path::new(&format!("{prefix}.meta.json")),
        &(serde_json::to_string_pretty(&meta)? + "\n"),
    )
}

#[derive(Serialize)]
struct MaxFidelityOut {
    best_j: f64,
    best_t: f64,
    max_fidelity: f64,
}

/// `max-fidelity`: maximize the fidelity with the first target over the J
/// grid and the time window; grid scan plus golden-section refinement.
pub fn cmd_max_fidelity(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let n = cfg.require_n()?;
    let grid = cfg.require_j()?.grid()?;
    let time = cfg.require_time()?;
    let psi0 = make_reference(parse_reference(cfg.require_initial_state()?)?, n)?;
    let target_name = &cfg.require_targets()?[0];
    let target = make_reference(parse_reference(target_name)?, n)?;

    let best =
        dynamics::max_fidelity_over_j(n, cfg.delta, &grid, &psi0, &target, time.t_max, time.steps)?;
    let out = MaxFidelityOut { best_j: best.best_j, best_t: best.best_t, max_fidelity: best.fidelity };
    write_text(
        Path::new(&format!("{prefix}.json")),
        &(serde_json::to_string_pretty(&out)? + "\n"),
    )
}

const DISORDER_OBSERVABLES: [&str; 3] = ["e_n_pair", "s_single", "fid_clean_ground"];

/// `disorder`: ensemble statistics of the ground-state pair negativity,
/// single-qubit entropy, and fidelity with the clean (disorder-free) ground
/// state. Writes `<prefix>.json` plus a per-realization CSV.
pub fn cmd_disorder(cfg: &ExperimentConfig, prefix: &str) -> Result<()> {
    let dis = cfg.require_disorder()?.clone();
    let clean_spec = HamiltonianSpec::homogeneous(dis.n, dis.base_delta, dis.base_j)?;
    let clean_ground = representative_ground(&diagonalize(&build_pairwise(&clean_spec)?)?);

    let stats = lmg_net::disorder::run_ensemble(&dis, |spec| {
        let spectrum = diagonalize(&build_pairwise(spec)?)?;
        let ground = representative_ground(&spectrum);
        Ok(vec![
            entanglement::log_negativity(&ground, 1, 2)?,
            entanglement::block_entropy(&ground, &[1])?,
            fidelity(&ground, &clean_ground)?,
        ])
    })?;

    let observables: Vec<serde_json::Value> = DISORDER_OBSERVABLES
        .iter()
        .zip(&stats.observables)
        .map(|(name, s)| {
            json!({ "name": name, "mean": s.mean, "std": s.std, "min": s.min, "max": s.max, "n": s.n })
        })
        .collect();
    let report = json!({
        "config": dis,
        "observables": observables,
        "realizations": stats.realizations,
    });
    write_text(
        Path::new(&format!("{prefix}.json")),
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )?;

    let mut csv = String::from("realization_index,");
    csv.push_str(&DISORDER_OBSERVABLES.join(","));
    csv.push('\n');
    for (index, row) in stats.samples.iter().enumerate() {
        csv.push_str(&index.to_string());
        for &x in row {
            csv.push(',');
            csv.push_str(&fmt(x));
        }
        csv.push('\n');
    }
    write_text(Path::new(&format!("{prefix}.realizations.csv")), &csv)
}
