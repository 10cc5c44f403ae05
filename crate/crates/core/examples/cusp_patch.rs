//! A two-valued vortex patch with a cusp: the minimizer of its class has a
//! convex patch, and the cusp's width profile is measured on the input.

use std::collections::BTreeMap;

use steady_euler::fieldcore::{build_grid, ConvexDomain, Preset};
use steady_euler::lab::{cusp_patch_experiment, CuspOptions};

fn main() -> steady_euler::Result<()> {
    let preset = Preset::parse("cusp-patch", &BTreeMap::new())?;
    for k in [64, 128] {
        let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / k as f64)?;
        let (rep, _) = cusp_patch_experiment(&grid, &preset, &CuspOptions::default())?;
        println!(
            "h = 1/{k:<3} patch {} nodes  defect {:.4} -> {:.4}  width exponent {}  energy {:.5} -> {:.5}  converged {}",
            rep.patch_nodes,
            rep.input_defect,
            rep.minimizer_defect,
            rep.width_exponent.map(|e| format!("{e:.3}")).unwrap_or("-".into()),
            rep.energy_input,
            rep.energy_minimizer,
            rep.converged
        );
    }
    Ok(())
}
