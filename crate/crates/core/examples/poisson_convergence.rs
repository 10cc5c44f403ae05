//! Sup-norm error of the Dirichlet solver on the unit disk under refinement.

use std::sync::Arc;
use std::time::Instant;

use steady_euler::fieldcore::{ConvexDomain, Grid, ScalarField};
use steady_euler::poisson::{kinetic_energy, solve_dirichlet};

fn main() -> steady_euler::Result<()> {
    let mut prev: Option<f64> = None;
    for k in [16, 32, 64, 128, 256] {
        let h = 1.0 / k as f64;
        let t = Instant::now();
        let grid = Arc::new(Grid::new(ConvexDomain::unit_disk(), h)?);
        let omega = ScalarField::constant(grid.clone(), 4.0)?;
        let sol = solve_dirichlet(&omega, 1e-9)?;
        let exact = ScalarField::from_fn(grid, |p| p[0] * p[0] + p[1] * p[1] - 1.0)?;
        let err = sol.psi.sup_distance(&exact)?;
        let energy = kinetic_energy(&omega)?;
        let ratio = prev.map(|p| p / err).unwrap_or(f64::NAN);
        println!(
            "h = 1/{k:<4} nodes {:>7}  iters {:>4}  sup error {err:.3e}  ratio {ratio:.2}  E/pi {:.5}  ({:.2?})",
            sol.psi.len(),
            sol.iterations,
            energy / std::f64::consts::PI,
            t.elapsed()
        );
        prev = Some(err);
    }
    Ok(())
}
