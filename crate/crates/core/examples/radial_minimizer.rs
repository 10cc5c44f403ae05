//! Energy minimizer for omega0 = 2 - r^2 on the unit disk. The minimizer is
//! the increasing rearrangement 1 + r^2, with a closed-form stream function.

use std::collections::BTreeMap;

use steady_euler::fieldcore::{build_grid, sample_preset, ConvexDomain, ScalarField};
use steady_euler::poisson::first_eigenvalue;
use steady_euler::steady::{check_arnold, extremize_energy, Extremum, SteadyOptions};

fn psi_exact(r: f64) -> f64 {
    (r.powi(4) - 1.0) / 16.0 + (r * r - 1.0) / 4.0
}

fn main() -> steady_euler::Result<()> {
    for k in [32, 64, 128] {
        let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / k as f64)?;
        let w0 = sample_preset("radial-poly", &BTreeMap::new(), &grid)?;
        let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default())?;
        let exact = ScalarField::from_fn(grid.clone(), |p| 1.0 + p[0] * p[0] + p[1] * p[1])?;
        let psi_err = grid
            .positions()
            .zip(st.psi.values())
            .map(|(p, v)| (v - psi_exact(p[0].hypot(p[1]))).abs())
            .fold(0.0, f64::max);
        println!(
            "h = 1/{k:<4} iters {:>3} converged {:<5} energy {:.6}  L1(omega) {:.2e}  sup(psi) {:.2e}",
            st.iterations,
            st.converged,
            st.energy(),
            st.omega.l1_distance(&exact)?,
            psi_err
        );
        if k == 128 {
            let arnold = check_arnold(&st, &first_eigenvalue(&grid, 1e-8)?)?;
            println!("profile {:?}, inf slope {:.4}, verdict {:?}", arnold.direction, arnold.inf_slope, arnold.verdict);
        }
    }
    Ok(())
}
