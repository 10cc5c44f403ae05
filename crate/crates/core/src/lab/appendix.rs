use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cusp::fit_slope;
use crate::error::{Error, Result};
use crate::fieldcore::{ConvexDomain, Grid, Preset, ScalarField};
use crate::poisson::kinetic_energy;
use crate::rearrange::symmetric_increasing_rearrangement;
use crate::steady::{extremize_energy, Extremum, SteadyOptions};

/// `|{x^2 + y^4 < 1}| = 4 int_0^{pi/2} cos^{3/2}`, by composite Simpson.
pub fn appendix_mu0() -> f64 {
    let n = 20_000;
    let dt = FRAC_PI_2 / n as f64;
    let f = |t: f64| t.cos().max(0.0).powf(1.5);
    let mut s = f(0.0) + f(FRAC_PI_2);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * dt);
    }
    4.0 * s * dt / 3.0
}

/// Symmetric increasing rearrangement of `1 + 2(x^2 + y^4)` inside the
/// region where the polynomial is unblended.
pub fn appendix_formula(r: f64, mu0: f64) -> f64 {
    1.0 + 2.0 * (PI / mu0).powf(4.0 / 3.0) * r.powf(8.0 / 3.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppendixOptions {
    /// Radii on which the formula and the exponent are checked.
    pub radii: [f64; 2],
    /// Also compute the energy minimizer and compare it with the
    /// rearrangement.
    pub minimizer: Option<SteadyOptions>,
}

impl Default for AppendixOptions {
    fn default() -> Self {
        AppendixOptions {
            radii: [0.1, 0.6],
            minimizer: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub h: f64,
    pub mu0: f64,
    pub radii: [f64; 2],
    pub nodes_checked: usize,
    /// Largest `|u - F| / F` for the rearrangement `u` and the formula `F`.
    pub formula_max_rel_error: f64,
    /// Same for `u - 1` against `F - 1`.
    pub excess_max_rel_error: f64,
    pub energy_original: f64,
    pub energy_rearranged: f64,
    pub energy_gap: f64,
    /// Slope of `log(u - 1)` against `log r`.
    pub exponent: f64,
    /// `|omega - u|_1 / |Omega|` for the minimizer `omega`, if computed.
    pub minimizer_l1_to_rearranged: Option<f64>,
    pub minimizer_converged: Option<bool>,
}

/// Rearranges the appendix preset on the unit disk, checks the closed form
/// of its radial profile, the energy decrease and the radial exponent.
pub fn appendix_experiment(grid: &Arc<Grid>, preset: &Preset, opts: &AppendixOptions) -> Result<(AppendixReport, ScalarField)> {
    if !matches!(preset, Preset::AppendixA { .. }) {
        return Err(Error::BadParams(format!("{} is not the appendix preset", preset.name())));
    }
    match grid.domain() {
        ConvexDomain::Disk { center, radius } if *center == [0.0, 0.0] && *radius == 1.0 => {}
        _ => return Err(Error::BadParams("the appendix experiment runs on the unit disk".into())),
    }
    let [r0, r1] = opts.radii;
    if !(0.0 < r0 && r0 < r1) {
        return Err(Error::EmptyInterval(r0, r1));
    }
    let omega0 = preset.sample(grid)?;
    let u = symmetric_increasing_rearrangement(&omega0)?;
    let mu0 = appendix_mu0();
    let mut worst = 0.0f64;
    let mut worst_excess = 0.0f64;
    let mut pts = Vec::new();
    for (k, p) in grid.positions().enumerate() {
        let r = p[0].hypot(p[1]);
        if r < r0 || r > r1 {
            continue;
        }
        let f = appendix_formula(r, mu0);
        let v = u.values()[k];
        worst = worst.max((v - f).abs() / f);
        worst_excess = worst_excess.max(((v - 1.0) - (f - 1.0)).abs() / (f - 1.0));
        if v > 1.0 {
            pts.push((r.ln(), (v - 1.0).ln()));
        }
    }
    if pts.is_empty() {
        return Err(Error::ResolutionTooCoarse("no nodes in the radial window".into()));
    }
    let exponent = fit_slope(&pts).ok_or_else(|| Error::ResolutionTooCoarse("radial window too thin".into()))?;
    let energy_original = kinetic_energy(&omega0)?;
    let energy_rearranged = kinetic_energy(&u)?;
    let (minimizer_l1_to_rearranged, minimizer_converged) = match &opts.minimizer {
        Some(so) => {
            let st = extremize_energy(&omega0, Extremum::Min, so)?;
            (Some(st.omega.l1_distance(&u)? / grid.area()), Some(st.converged))
        }
        None => (None, None),
    };
    let report = AppendixReport {
        h: grid.h(),
        mu0,
        radii: opts.radii,
        nodes_checked: pts.len(),
        formula_max_rel_error: worst,
        excess_max_rel_error: worst_excess,
        energy_original,
        energy_rearranged,
        energy_gap: energy_original - energy_rearranged,
        exponent,
        minimizer_l1_to_rearranged,
        minimizer_converged,
    };
    Ok((report, u))
}
