use serde::{Deserialize, Serialize};

use super::topology::{
    boundary_values, check_level_topology, label_components, uniform_levels,
    TopologyVerdict, ViolationKind,
};
use crate::error::{Error, Result};
use crate::fieldcore::{Neighbor, ScalarField};
use crate::steady::SteadyState;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessOptions {
    /// Band endpoints are `inf + k (sup - inf) / n_levels`, `k = 0..=n_levels`.
    pub n_levels: usize,
    /// Passed to the topology check.
    pub tol: f64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            n_levels: 64,
            tol: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMechanism {
    /// A band of `omega0` splits into separated pieces while the matching
    /// band of the minimizer is a connected ring: bound `epsilon / 2`.
    SeparatedBand,
    /// The minimizer exceeds `(sup omega + s) / 2` near the boundary while
    /// `omega0` reaches `s` there: bound `(sup omega - s) / 2`.
    BoundaryCollar,
}

/// Lower bound on `|v - omega|_inf` for every `v` in the strong closure of
/// the rearrangement class, where `omega` is the minimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: ViolationKind,
    pub mechanism: WitnessMechanism,
    /// Upper end `s` of the band, or the collar level.
    pub level: f64,
    /// Width of the band `{s - epsilon < omega0 < s}`.
    pub epsilon: Option<f64>,
    /// Components of the band, counting pieces within a few cells of each
    /// other as one.
    pub components: usize,
    pub sup_omega: f64,
    /// Smallest minimizer value on the boundary-adjacent nodes; the bound
    /// relies on it exceeding `(sup_omega + s) / 2`.
    pub collar_min: Option<f64>,
    pub lower_bound: f64,
}

/// Band pieces closer than this many cells count as one component, so a
/// thin band broken up by the lattice is not mistaken for separated pieces.
const SEPARATION_CELLS: usize = 2;

/// Components of `{lo < omega0 < hi}` after dilating it by
/// `SEPARATION_CELLS` lattice cells.
fn band_components(omega0: &ScalarField, lo: f64, hi: f64) -> usize {
    let v = omega0.values();
    let r = SEPARATION_CELLS;
    let grid = omega0.grid();
    let (cols, rows) = grid.shape();
    let (w, h) = (cols + 2 * r, rows + 2 * r);
    let mut mask = vec![false; w * h];
    for (k, node) in grid.nodes().iter().enumerate() {
        if lo < v[k] && v[k] < hi {
            let (ci, cj) = (node.i + r, node.j + r);
            for j in cj - r..=cj + r {
                for i in ci - r..=ci + r {
                    mask[j * w + i] = true;
                }
            }
        }
    }
    label_components(w, h, &mask, true).1
}

/// Bands must be at least this many cells thick where `omega0` is steepest.
const RESOLVED_CELLS: f64 = 4.0;

/// Largest difference quotient of `omega0` over interior edges.
fn max_slope(omega0: &ScalarField) -> f64 {
    let grid = omega0.grid();
    let v = omega0.values();
    let mut m = 0.0f64;
    for (k, node) in grid.nodes().iter().enumerate() {
        for nb in &node.neighbors[..] {
            if let Neighbor::Interior(j) = *nb {
                m = m.max((v[k] - v[j]).abs());
            }
        }
    }
    m / grid.h()
}

/// The widest band `{s - epsilon < omega0 < s}` with at least two separated
/// components, over endpoint pairs of the level grid. Bands too thin for
/// the lattice to resolve are skipped.
fn widest_band(omega0: &ScalarField, n: usize) -> Option<(f64, f64, usize)> {
    let t = uniform_levels(omega0.min(), omega0.max(), n + 1);
    let min_width = RESOLVED_CELLS * omega0.grid().h() * max_slope(omega0);
    for width in (1..=n).rev() {
        if t[width] - t[0] < min_width {
            break;
        }
        for a in 0..=n - width {
            let c = band_components(omega0, t[a], t[a + width]);
            if c >= 2 {
                return Some((t[a + width], t[a + width] - t[a], c));
            }
        }
    }
    None
}

fn collar_witness(kind: ViolationKind, s: f64, minimizer: &SteadyState) -> WitnessReport {
    let sup_omega = minimizer.omega.max();
    let w = minimizer.omega.values();
    let collar_min = minimizer
        .omega
        .grid()
        .boundary_adjacent()
        .map(|k| w[k])
        .fold(f64::INFINITY, f64::min);
    WitnessReport {
        kind,
        mechanism: WitnessMechanism::BoundaryCollar,
        level: s,
        epsilon: None,
        components: 0,
        sup_omega,
        collar_min: Some(collar_min),
        lower_bound: ((sup_omega - s) / 2.0).max(0.0),
    }
}

/// Computable certificate that no minimizer exists in the strong closure.
/// Errors with `NoViolationFound` when the topology check passes.
pub fn nonexistence_witness(omega0: &ScalarField, minimizer: &SteadyState, opts: &WitnessOptions) -> Result<WitnessReport> {
    omega0.ensure_same_grid(&minimizer.omega)?;
    if opts.n_levels == 0 {
        return Err(Error::BadParams("need at least one level".into()));
    }
    let topo = check_level_topology(omega0, opts.n_levels.max(8), opts.tol)?;
    let sup_omega = minimizer.omega.max();
    match topo.verdict {
        TopologyVerdict::Admissible => Err(Error::NoViolationFound),
        TopologyVerdict::Violation(ViolationKind::BoundaryNonconstant) => {
            let s = boundary_values(omega0).into_iter().fold(f64::INFINITY, f64::min);
            Ok(collar_witness(ViolationKind::BoundaryNonconstant, s, minimizer))
        }
        TopologyVerdict::Violation(kind @ ViolationKind::DisconnectedBand) => {
            if let Some((s, eps, components)) = widest_band(omega0, opts.n_levels) {
                return Ok(WitnessReport {
                    kind,
                    mechanism: WitnessMechanism::SeparatedBand,
                    level: s,
                    epsilon: Some(eps),
                    components,
                    sup_omega,
                    collar_min: None,
                    lower_bound: eps / 2.0,
                });
            }
            // A connected sublevel set with a hole that contains the whole
            // boundary collar.
            let v = omega0.values();
            let collar: Vec<usize> = omega0.grid().boundary_adjacent().collect();
            topo.levels
                .iter()
                .filter(|l| !l.simply_connected && collar.iter().all(|&k| v[k] < l.level))
                .map(|l| l.level)
                .reduce(f64::min)
                .map(|s| collar_witness(kind, s, minimizer))
                .ok_or(Error::NoViolationFound)
        }
    }
}
