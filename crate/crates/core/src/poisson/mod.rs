//! Dirichlet Poisson solver, gradient, kinetic energy and the first
//! Dirichlet eigenvalue.

mod eigen;
mod gradient;
mod operator;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use eigen::{first_eigenvalue, EigenEstimate};
pub use gradient::{gradient, gradient_magnitude, gradient_with, velocity, BoundaryValues};
pub use operator::Laplacian;

use crate::error::{Error, Result};
use crate::fieldcore::{Grid, ScalarField};

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonSolution {
    pub psi: ScalarField,
    /// `|L psi - omega|_inf`.
    pub residual_norm: f64,
    pub iterations: usize,
}

/// JSON summary of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub residual: f64,
    pub iterations: usize,
    pub energy: f64,
    pub min_psi: f64,
}

/// Reusable solver for one grid.
#[derive(Debug, Clone)]
pub struct PoissonSolver {
    lap: Laplacian,
}

impl PoissonSolver {
    pub fn new(grid: Arc<Grid>) -> Self {
        PoissonSolver {
            lap: Laplacian::new(grid),
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.lap.grid()
    }

    pub fn laplacian(&self) -> &Laplacian {
        &self.lap
    }

    /// Solves `L psi = omega` with `psi = 0` on the boundary, to
    /// `|L psi - omega|_inf <= tol`, optionally starting from `guess`.
    pub fn solve(
        &self,
        omega: &ScalarField,
        tol: f64,
        guess: Option<&ScalarField>,
    ) -> Result<PoissonSolution> {
        if !(tol > 0.0) {
            return Err(Error::BadParams(format!("tolerance {tol}")));
        }
        let grid = self.grid();
        if !omega.grid().same_as(grid) {
            return Err(Error::GridMismatch);
        }
        let h2 = grid.h() * grid.h();
        let b: Vec<f64> = omega.values().iter().map(|w| -h2 * w).collect();
        let mut x = match guess {
            Some(g) => {
                g.ensure_same_grid(omega)?;
                g.values().to_vec()
            }
            None => vec![0.0; grid.len()],
        };
        let (iterations, res) = self.lap.pcg(&b, &mut x, tol * h2, self.lap.iteration_cap())?;
        Ok(PoissonSolution {
            psi: ScalarField::new(grid.clone(), x)?,
            residual_norm: res / h2,
            iterations,
        })
    }

    /// `L psi` as a field.
    pub fn apply(&self, psi: &ScalarField) -> Result<ScalarField> {
        if !psi.grid().same_as(self.grid()) {
            return Err(Error::GridMismatch);
        }
        let mut out = vec![0.0; psi.len()];
        self.lap.apply(psi.values(), &mut out);
        ScalarField::new(psi.grid().clone(), out)
    }

    /// `1/2 <grad_h psi, grad_h psi>` for the edge gradient matched to `L`,
    /// which equals `-1/2 h^2 psi^T L psi`.
    pub fn energy(&self, psi: &ScalarField) -> f64 {
        0.5 * self.lap.edge_form(psi.values())
    }
}

/// Solves the Dirichlet problem `Delta psi = omega`, `psi = 0` on the
/// boundary.
pub fn solve_dirichlet(omega: &ScalarField, tol: f64) -> Result<PoissonSolution> {
    PoissonSolver::new(omega.grid().clone()).solve(omega, tol, None)
}

/// Solver tolerance used when callers do not pick one: relative to the
/// size of the right-hand side.
pub fn default_tol(omega: &ScalarField) -> f64 {
    let m = omega.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    1e-10 * m.max(f64::MIN_POSITIVE)
}

/// Kinetic energy `1/2 int |grad psi|^2` of the flow with vorticity `omega`.
pub fn kinetic_energy(omega: &ScalarField) -> Result<f64> {
    if omega.values().iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let solver = PoissonSolver::new(omega.grid().clone());
    let sol = solver.solve(omega, default_tol(omega), None)?;
    Ok(solver.energy(&sol.psi))
}

/// Energy of a given stream function.
pub fn stream_energy(psi: &ScalarField) -> f64 {
    PoissonSolver::new(psi.grid().clone()).energy(psi)
}

/// Solve plus the summary written next to the field files.
pub fn solve_report(omega: &ScalarField, tol: f64) -> Result<(PoissonSolution, SolveReport)> {
    let solver = PoissonSolver::new(omega.grid().clone());
    let sol = solver.solve(omega, tol, None)?;
    let report = SolveReport {
        residual: sol.residual_norm,
        iterations: sol.iterations,
        energy: solver.energy(&sol.psi),
        min_psi: sol.psi.min(),
    };
    Ok((sol, report))
}
