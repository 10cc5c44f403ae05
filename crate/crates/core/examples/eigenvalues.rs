//! First Dirichlet eigenvalue on three convex domains under refinement.

use std::f64::consts::PI;

use steady_euler::fieldcore::{build_grid, ConvexDomain};
use steady_euler::poisson::first_eigenvalue;

fn main() -> steady_euler::Result<()> {
    let domains = [
        ("unit square", ConvexDomain::rectangle(0.0, 0.0, 1.0, 1.0)?, Some(2.0 * PI * PI)),
        ("unit disk", ConvexDomain::unit_disk(), Some(2.404_825_557_695_773_f64.powi(2))),
        ("pentagon", ConvexDomain::regular_polygon(5, [0.0, 0.0], 1.0, PI / 2.0)?, None),
    ];
    for (name, d, exact) in domains {
        for k in [32, 64, 128] {
            let grid = build_grid(d.clone(), 1.0 / k as f64)?;
            let eig = first_eigenvalue(&grid, 1e-8)?;
            let rel = exact.map(|e| format!("{:.2e}", (eig.lambda1 - e).abs() / e)).unwrap_or("-".into());
            println!("{name:<12} h = 1/{k:<4} lambda1 {:.6}  rel error {rel}", eig.lambda1);
        }
    }
    Ok(())
}
