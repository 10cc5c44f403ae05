use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::convexgeo::convexity_defect;
use crate::error::{Error, Result};
use crate::fieldcore::{Grid, Point, Preset, ScalarField};
use crate::poisson::kinetic_energy;
use crate::steady::{extremize_energy, Extremum, SteadyOptions, SteadyState};

#[derive(Debug, Clone, PartialEq)]
pub struct CuspOptions {
    pub steady: SteadyOptions,
    /// Columns narrower than this many cells are left out of the width fit.
    pub min_width_cells: usize,
}

impl Default for CuspOptions {
    fn default() -> Self {
        // A two-valued class moves in whole node swaps, so the residual
        // cannot get near the general default.
        CuspOptions {
            steady: SteadyOptions {
                tol: 1e-3,
                ..SteadyOptions::default()
            },
            min_width_cells: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub h: f64,
    /// Nodes and measure of the patch.
    pub patch_nodes: usize,
    pub patch_area: f64,
    /// Convexity defects of `{omega0 = 0}` and of the minimizer's `{omega = 0}`.
    pub input_defect: f64,
    pub minimizer_defect: f64,
    /// Fitted `p` in `width ~ distance^p` from the tip; `None` for patches
    /// without a tip or with too few wide columns.
    pub width_exponent: Option<f64>,
    pub fit_columns: usize,
    pub linf_distance: f64,
    /// `|omega - omega0|_1 / |Omega|`.
    pub l1_distance: f64,
    pub energy_input: f64,
    pub energy_minimizer: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Fits `width ~ (x - tip_x)^p` over lattice columns of `nodes`, keeping
/// columns with at least `min_cells` nodes. Returns `(p, columns used)`.
fn width_exponent(grid: &Grid, nodes: &[usize], tip: Point, length: f64, min_cells: usize) -> (Option<f64>, usize) {
    let mut columns: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for &k in nodes {
        let n = grid.node(k);
        columns.entry(n.i).or_insert((n.position[0], 0)).1 += 1;
    }
    let h = grid.h();
    let pts: Vec<(f64, f64)> = columns
        .values()
        .filter(|&&(x, c)| c >= min_cells && x > tip[0] && x - tip[0] <= length)
        .map(|&(x, c)| ((x - tip[0]).ln(), (c as f64 * h).ln()))
        .collect();
    (fit_slope(&pts), pts.len())
}

fn zero_set_defect(field: &ScalarField) -> Result<f64> {
    let grid = field.grid();
    let centers: Vec<Point> = field
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 0.0)
        .map(|(k, _)| grid.node(k).position)
        .collect();
    convexity_defect(&centers, grid.h())
}

/// Minimizes the energy on the rearrangement class of a vortex patch and
/// compares the zero sets of input and minimizer. The patch preset decides
/// which set is the patch (`invert` makes it the zero set).
pub fn cusp_patch_experiment(grid: &Arc<Grid>, preset: &Preset, opts: &CuspOptions) -> Result<(CuspReport, SteadyState)> {
    let Preset::Patch {
        tip, length, invert, ..
    } = preset
    else {
        return Err(Error::BadParams(format!("{} is not a patch preset", preset.name())));
    };
    let omega0 = preset.sample(grid)?;
    let patch_value = if *invert { 0.0 } else { 1.0 };
    let patch: Vec<usize> = (0..omega0.len()).filter(|&k| omega0.values()[k] == patch_value).collect();
    let (width_exponent, fit_columns) = match preset {
        Preset::Patch {
            shape: crate::fieldcore::PatchShape::Cusp,
            ..
        } => width_exponent(grid, &patch, *tip, *length, opts.min_width_cells),
        _ => (None, 0),
    };
    let state = extremize_energy(&omega0, Extremum::Min, &opts.steady)?;
    let report = CuspReport {
        h: grid.h(),
        patch_nodes: patch.len(),
        patch_area: patch.len() as f64 * grid.weight(),
        input_defect: zero_set_defect(&omega0)?,
        minimizer_defect: zero_set_defect(&state.omega)?,
        width_exponent,
        fit_columns,
        linf_distance: state.omega.sup_distance(&omega0)?,
        l1_distance: state.omega.l1_distance(&omega0)? / grid.area(),
        energy_input: kinetic_energy(&omega0)?,
        energy_minimizer: state.energy(),
        converged: state.converged,
        iterations: state.iterations,
    };
    Ok((report, state))
}
