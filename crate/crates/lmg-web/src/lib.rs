//! Browser bindings: three interactive views over the simulator, each
//! returning a plain JS object (arrays of numbers) for canvas plotting.

use lmg_net::dynamics;
use lmg_net::entanglement;
use lmg_net::hamiltonian::{build_pairwise, HamiltonianSpec};
use lmg_net::hilbert::{fidelity, make_reference, ReferenceState, StateVector};
use lmg_net::spectra::{diagonalize, subspace_fidelity};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn j_grid(j_min: f64, j_max: f64, steps: usize) -> Result<Vec<f64>, JsValue> {
    if steps < 2 || !(j_max > j_min) {
        return Err(JsValue::from_str("need j_max > j_min and steps >= 2"));
    }
    Ok((0..steps)
        .map(|k| j_min + (j_max - j_min) * k as f64 / (steps - 1) as f64)
        .collect())
}

#[derive(Serialize)]
struct GroundScan {
    j: Vec<f64>,
    fid_sep: Vec<f64>,
    fid_ghz: Vec<f64>,
    fid_ent3: Option<Vec<f64>>,
}

/// Ground-state fidelities against SEP/GHZ (and ENT3 when n = 3) over a
/// coupling grid, at delta = 1.
#[wasm_bindgen]
pub fn ground_scan(n: usize, j_min: f64, j_max: f64, steps: usize) -> Result<JsValue, JsValue> {
    let grid = j_grid(j_min, j_max, steps)?;
    let sep = make_reference(ReferenceState::Sep, n).map_err(err)?;
    let ghz = make_reference(ReferenceState::Ghz, n).map_err(err)?;
    let ent3 = (n == 3).then(|| make_reference(ReferenceState::Ent3, n).unwrap());
    let mut out = GroundScan {
        j: grid.clone(),
        fid_sep: Vec::new(),
        fid_ghz: Vec::new(),
        fid_ent3: ent3.as_ref().map(|_| Vec::new()),
    };
    for &j in &grid {
        let spec = HamiltonianSpec::homogeneous(n, 1.0, j).map_err(err)?;
        let spectrum = diagonalize(&build_pairwise(&spec).map_err(err)?).map_err(err)?;
        let basis: Vec<StateVector> =
            (0..spectrum.ground_cluster_size()).map(|k| spectrum.eigenstate(k)).collect();
        out.fid_sep.push(subspace_fidelity(&basis, &sep).map_err(err)?);
        out.fid_ghz.push(subspace_fidelity(&basis, &ghz).map_err(err)?);
        if let (Some(target), Some(col)) = (&ent3, out.fid_ent3.as_mut()) {
            col.push(subspace_fidelity(&basis, target).map_err(err)?);
        }
    }
    serde_wasm_bindgen::to_value(&out).map_err(err)
}

#[derive(Serialize)]
struct SpectrumScan {
    j: Vec<f64>,
    /// `levels[k][grid point]`: energy of level k across the grid.
    levels: Vec<Vec<f64>>,
}

/// Low-lying energy levels (the lowest 2^(n-1), or all 8 for n = 3) over a
/// coupling grid, at delta = 1.
#[wasm_bindgen]
pub fn spectrum_scan(n: usize, j_min: f64, j_max: f64, steps: usize) -> Result<JsValue, JsValue> {
    let grid = j_grid(j_min, j_max, steps)?;
    let count = if n == 3 { 1usize << n } else { 1usize << (n - 1) };
    let mut levels = vec![Vec::with_capacity(grid.len()); count];
    for &j in &grid {
        let spec = HamiltonianSpec::homogeneous(n, 1.0, j).map_err(err)?;
        let spectrum = diagonalize(&build_pairwise(&spec).map_err(err)?).map_err(err)?;
        for (k, level) in levels.iter_mut().enumerate() {
            level.push(spectrum.eigenvalues()[k]);
        }
    }
    serde_wasm_bindgen::to_value(&SpectrumScan { j: grid, levels }).map_err(err)
}

#[derive(Serialize)]
struct EvolveTrace {
    t: Vec<f64>,
    fid_ghz: Vec<f64>,
    fid_w: Vec<f64>,
    e_n_pair: Vec<f64>,
    s_single: Vec<f64>,
}

/// Fidelity of exp(-iHt)|SEP> against GHZ and W plus the (1,2) negativity
/// and single-qubit entropy, on a uniform time grid at delta = 1.
#[wasm_bindgen]
pub fn evolve_trace(n: usize, j: f64, t_max: f64, steps: usize) -> Result<JsValue, JsValue> {
    let spec = HamiltonianSpec::homogeneous(n, 1.0, j).map_err(err)?;
    let spectrum = diagonalize(&build_pairwise(&spec).map_err(err)?).map_err(err)?;
    let psi0 = make_reference(ReferenceState::Sep, n).map_err(err)?;
    let ghz = make_reference(ReferenceState::Ghz, n).map_err(err)?;
    let w = make_reference(ReferenceState::W, n).map_err(err)?;
    if steps < 2 || !(t_max > 0.0) {
        return Err(JsValue::from_str("need t_max > 0 and steps >= 2"));
    }
    let mut out = EvolveTrace {
        t: Vec::with_capacity(steps),
        fid_ghz: Vec::new(),
        fid_w: Vec::new(),
        e_n_pair: Vec::new(),
        s_single: Vec::new(),
    };
    for k in 0..steps {
        let t = t_max * k as f64 / (steps - 1) as f64;
        let psi = dynamics::evolve(&spectrum, &psi0, t).map_err(err)?;
        out.t.push(t);
        out.fid_ghz.push(fidelity(&psi, &ghz).map_err(err)?);
        out.fid_w.push(fidelity(&psi, &w).map_err(err)?);
        out.e_n_pair.push(entanglement::log_negativity(&psi, 1, 2).map_err(err)?);
        out.s_single.push(entanglement::block_entropy(&psi, &[1]).map_err(err)?);
    }
    serde_wasm_bindgen::to_value(&out).map_err(err)
}
