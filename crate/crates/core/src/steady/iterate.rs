use serde::{Deserialize, Serialize};

use super::polish::{energy_form, swap_descent, CYCLE_MAX_NODES, MAX_STARTS, POLISH_MAX_NODES};
use crate::error::{Error, Result};
use crate::fieldcore::ScalarField;
use crate::poisson::{PoissonSolver, PoissonSolution};
use crate::rearrange::{
    distribution_function, rearrange_along, MonotoneProfile, Monotonicity, Order,
};

/// Which extremum of the energy on the rearrangement class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    pub fn order(self) -> Order {
        match self {
            Extremum::Min => Order::Increasing,
            Extremum::Max => Order::Decreasing,
        }
    }
}

impl std::str::FromStr for Extremum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Extremum::Min),
            "max" => Ok(Extremum::Max),
            other => Err(Error::Usage(format!("direction must be min or max, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyOptions {
    /// Stop when `|omega_{k+1} - omega_k|_1 / |Omega| <= tol`.
    pub tol: f64,
    pub max_iters: usize,
    /// Poisson residual target relative to `max |omega0|`.
    pub solver_rel_tol: f64,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        SteadyOptions {
            tol: 1e-6,
            max_iters: 200,
            solver_rel_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SteadyState {
    pub psi: ScalarField,
    pub omega: ScalarField,
    pub profile: MonotoneProfile,
    /// Energy of every rearranged iterate, then of the polished state if
    /// swaps were made.
    pub energy_history: Vec<f64>,
    /// `|omega_{k+1} - omega_k|_1 / |Omega|` per step.
    pub residual_history: Vec<f64>,
    /// Residual of the step that produced the returned `omega`; after a
    /// polish, `|R(Delta^{-1} omega) - omega|_1 / |Omega|`.
    pub fixed_point_residual: f64,
    pub direction: Extremum,
    pub iterations: usize,
    pub converged: bool,
    /// Largest Poisson residual `|L psi - omega|_inf` over the run.
    pub solver_residual: f64,
}

impl SteadyState {
    pub fn energy(&self) -> f64 {
        *self.energy_history.last().unwrap_or(&0.0)
    }

    /// Errors with `NonConvergence` unless the run met its tolerance.
    pub fn require_converged(&self) -> Result<&Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                iterations: self.iterations,
                residual: self.fixed_point_residual,
            })
        }
    }
}

/// Checks `omega0 >= 0` or `omega0 <= 0` and returns the sign to apply.
pub fn vorticity_sign(omega0: &ScalarField) -> Result<f64> {
    let (min, max) = (omega0.min(), omega0.max());
    let slack = 1e-12 * min.abs().max(max.abs());
    if min >= -slack {
        Ok(1.0)
    } else if max <= slack {
        Ok(-1.0)
    } else {
        Err(Error::SignViolation { min, max })
    }
}

/// `f` with `f(psi) = omega`: composes the left inverse of `omega0`'s
/// distribution with the mid-mass of each `psi` value.
pub fn extract_profile(psi: &ScalarField, omega0: &ScalarField, dir: Extremum) -> Result<MonotoneProfile> {
    psi.ensure_same_grid(omega0)?;
    let inv = distribution_function(omega0).left_inverse()?;
    let dpsi = distribution_function(psi);
    let n = dpsi.count();
    let cell = dpsi.cell();
    let mut pts = Vec::with_capacity(dpsi.values().len());
    let mut prev = 0usize;
    for (t, m) in dpsi.breakpoints() {
        let c = (m / cell).round() as usize;
        let ranks = match dir {
            Extremum::Min => prev + c,
            Extremum::Max => (n - prev) + (n - c),
        };
        pts.push((t, inv.eval(ranks as f64 * 0.5 * cell)));
        prev = c;
    }
    let mono = match dir {
        Extremum::Min => Monotonicity::Nondecreasing,
        Extremum::Max => Monotonicity::Nonincreasing,
    };
    MonotoneProfile::new(pts, mono)
}

fn negate_profile(p: &MonotoneProfile) -> Result<MonotoneProfile> {
    let pts: Vec<(f64, f64)> = p.breakpoints().iter().rev().map(|&(s, v)| (-s, -v)).collect();
    MonotoneProfile::new(pts, p.direction())
}

/// Energy extremizer in the rearrangement class of `omega0`.
///
/// Iterates `omega_k = R(psi_k)`, `phi_k = Delta^{-1} omega_k`, where `R`
/// rearranges `omega0` along `psi_k`. Maximization sets `psi_{k+1} =
/// phi_k`, which never lowers the energy. Minimization averages,
/// `psi_{k+1} = (1 - theta) psi_k + theta phi_k`, halving `theta` whenever
/// the residual grows and doubling it (up to 1) after three good steps.
///
/// Near-ties between nodes can leave the discrete iteration cycling at a
/// residual of a few swapped nodes. The run stops once the best residual
/// has not improved for `STALL_ITERS` steps and keeps the iterate with
/// the smallest residual. On grids of at most `POLISH_MAX_NODES` nodes the
/// distinct iterates (all of them on tiny grids, the lowest-energy few
/// otherwise) are then improved by exact swap descent and the best result
/// kept.
///
/// `converged` reports whether the returned state meets the tolerance.
pub fn extremize_energy(omega0: &ScalarField, dir: Extremum, opts: &SteadyOptions) -> Result<SteadyState> {
    if !(opts.tol > 0.0) {
        return Err(Error::BadParams(format!("tolerance {}", opts.tol)));
    }
    let sign = vorticity_sign(omega0)?;
    if sign < 0.0 {
        let st = extremize_nonnegative(&omega0.scale(-1.0)?, dir, opts)?;
        return Ok(SteadyState {
            psi: st.psi.scale(-1.0)?,
            omega: st.omega.scale(-1.0)?,
            profile: negate_profile(&st.profile)?,
            ..st
        });
    }
    extremize_nonnegative(omega0, dir, opts)
}

const STALL_ITERS: usize = 25;

fn extremize_nonnegative(omega0: &ScalarField, dir: Extremum, opts: &SteadyOptions) -> Result<SteadyState> {
    let grid = omega0.grid().clone();
    let solver = PoissonSolver::new(grid.clone());
    let scale = omega0.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let solve_tol = (opts.solver_rel_tol * scale).max(f64::MIN_POSITIVE);
    let area = grid.area();
    let order = dir.order();
    // Energy compared so that smaller is better.
    let sense = match dir {
        Extremum::Min => 1.0,
        Extremum::Max => -1.0,
    };
    let mut solver_residual = 0.0f64;
    let mut solve = |w: &ScalarField, guess: Option<&ScalarField>| -> Result<PoissonSolution> {
        let s = solver.solve(w, solve_tol, guess)?;
        solver_residual = solver_residual.max(s.residual_norm);
        Ok(s)
    };

    let mut psi = solve(omega0, None)?.psi;
    let mut omega = rearrange_along(omega0, &psi, order)?;
    let mut phi = solve(&omega, Some(&psi))?.psi;
    let mut energy_history = vec![solver.energy(&phi)];
    let mut residual_history: Vec<f64> = Vec::new();
    // Smallest residual so far, ties going to the better energy.
    let mut best = (f64::INFINITY, energy_history[0], omega.clone(), phi.clone());
    let polish = grid.len() <= POLISH_MAX_NODES;
    // Distinct iterates, used as starts for the polish.
    let mut visited = vec![(energy_history[0], omega.clone())];
    let mut theta = 1.0f64;
    let mut good_steps = 0;
    let mut best_res = f64::INFINITY;
    let mut stalled = 0;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        iterations += 1;
        psi = match dir {
            Extremum::Max => phi.clone(),
            Extremum::Min if theta == 1.0 => phi.clone(),
            Extremum::Min => {
                let v = psi
                    .values()
                    .iter()
                    .zip(phi.values())
                    .map(|(a, b)| (1.0 - theta) * a + theta * b)
                    .collect();
                ScalarField::new(grid.clone(), v)?
            }
        };
        let next = rearrange_along(omega0, &psi, order)?;
        let res = next.l1_distance(&omega)? / area;
        if residual_history.last().is_some_and(|&r| res > r) {
            theta *= 0.5;
            good_steps = 0;
        } else {
            good_steps += 1;
            if good_steps >= 3 {
                theta = (2.0 * theta).min(1.0);
                good_steps = 0;
            }
        }
        residual_history.push(res);
        if next != omega {
            omega = next;
            phi = solve(&omega, Some(&phi))?.psi;
            if polish && !visited.iter().any(|v| v.1 == omega) {
                visited.push((solver.energy(&phi), omega.clone()));
            }
        }
        let e = solver.energy(&phi);
        energy_history.push(e);
        if res < best.0 || (res == best.0 && sense * e < sense * best.1) {
            best = (res, e, omega.clone(), phi.clone());
        }
        if res <= opts.tol {
            break;
        }
        if res < best_res {
            best_res = res;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= STALL_ITERS {
                break;
            }
        }
    }
    let (mut residual, e);
    (residual, e, omega, phi) = best;
    if energy_history.last() != Some(&e) {
        energy_history.push(e);
    }
    if polish {
        let q = energy_form(solver.laplacian())?;
        if grid.len() > CYCLE_MAX_NODES {
            visited.sort_by(|a, b| (sense * a.0).total_cmp(&(sense * b.0)));
            visited.truncate(MAX_STARTS);
        }
        let mut best_polished: Option<(f64, ScalarField)> = None;
        for (_, mut w) in visited {
            let e = swap_descent(&q, &mut w, sense)?;
            if best_polished.as_ref().is_none_or(|b| sense * e < sense * b.0) {
                best_polished = Some((e, w));
            }
        }
        if let Some((_, w)) = best_polished {
            if w != omega {
                omega = w;
                phi = solve(&omega, Some(&phi))?.psi;
                energy_history.push(solver.energy(&phi));
                // One undamped step from the polished state.
                residual = rearrange_along(omega0, &phi, order)?.l1_distance(&omega)? / area;
            }
        }
    }
    let profile = extract_profile(&phi, omega0, dir)?;
    Ok(SteadyState {
        psi: phi,
        omega,
        profile,
        fixed_point_residual: residual,
        energy_history,
        residual_history,
        direction: dir,
        iterations,
        converged: residual <= opts.tol,
        solver_residual,
    })
}

/// `|L psi - f(psi)|_1 / |Omega|` with the solver's Laplacian.
pub fn fixed_point_residual(state: &SteadyState) -> Result<f64> {
    let solver = PoissonSolver::new(state.psi.grid().clone());
    let lap = solver.apply(&state.psi)?;
    let f = state.psi.map(|t| state.profile.eval(t))?;
    Ok(lap.l1_distance(&f)? / state.psi.grid().area())
}
