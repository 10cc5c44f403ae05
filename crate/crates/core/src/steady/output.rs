use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::iterate::{fixed_point_residual, Extremum, SteadyState};
use crate::error::{Error, Result};
use crate::fieldcore::io::{save_field, write_json, write_pgm, FieldMeta};
use crate::poisson::gradient_magnitude;
use crate::rearrange::distribution_function;

/// JSON summary of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyReport {
    pub direction: Extremum,
    pub converged: bool,
    pub iterations: usize,
    pub energy: f64,
    pub energy_history: Vec<f64>,
    pub residual_history: Vec<f64>,
    /// Rearrangement residual of the last iterate.
    pub fixed_point_residual: f64,
    /// `|L psi - f(psi)|_1 / |Omega|`.
    pub equation_residual: f64,
    pub solver_residual: f64,
    pub min_psi: f64,
    pub omega_range: [f64; 2],
    pub preset: Option<String>,
    pub params: std::collections::BTreeMap<String, String>,
}

impl SteadyReport {
    pub fn new(state: &SteadyState, meta: &FieldMeta) -> Result<Self> {
        Ok(SteadyReport {
            direction: state.direction,
            converged: state.converged,
            iterations: state.iterations,
            energy: state.energy(),
            energy_history: state.energy_history.clone(),
            residual_history: state.residual_history.clone(),
            fixed_point_residual: state.fixed_point_residual,
            equation_residual: fixed_point_residual(state)?,
            solver_residual: state.solver_residual,
            min_psi: state.psi.min(),
            omega_range: [state.omega.min(), state.omega.max()],
            preset: meta.preset.clone(),
            params: meta.params.clone(),
        })
    }
}

/// Writes `psi`/`omega` field files, `f.csv`, `psi_star.csv` and
/// `report.json` into `dir`; heatmaps on request. Returns the report path.
pub fn write_run_dir(dir: impl AsRef<Path>, state: &SteadyState, meta: &FieldMeta, heatmaps: bool) -> Result<PathBuf> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let with = |name: &str| FieldMeta {
        name: name.to_string(),
        ..meta.clone()
    };
    save_field(dir.join("psi"), &state.psi, &with("psi"))?;
    save_field(dir.join("omega"), &state.omega, &with("omega"))?;
    state.profile.write_csv(dir.join("f.csv"))?;
    distribution_function(&state.psi).write_csv(dir.join("psi_star.csv"))?;
    if heatmaps {
        write_pgm(dir.join("psi.pgm"), &state.psi)?;
        write_pgm(dir.join("omega.pgm"), &state.omega)?;
        write_pgm(dir.join("grad_psi.pgm"), &gradient_magnitude(&state.psi)?)?;
    }
    let path = dir.join("report.json");
    write_json(&path, &SteadyReport::new(state, meta)?)?;
    Ok(path)
}
