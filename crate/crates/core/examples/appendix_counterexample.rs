//! A radially decreasing vorticity on an annulus whose increasing
//! rearrangement has a profile that is only Hoelder continuous, with the
//! observed exponent and the closed-form rearranged values.

use std::collections::BTreeMap;

use steady_euler::fieldcore::{build_grid, ConvexDomain, Preset};
use steady_euler::lab::{appendix_experiment, AppendixOptions};

fn main() -> steady_euler::Result<()> {
    let preset = Preset::parse("appendix-A", &BTreeMap::new())?;
    for k in [64, 128, 256] {
        let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / k as f64)?;
        let (rep, _) = appendix_experiment(&grid, &preset, &AppendixOptions::default())?;
        println!(
            "h = 1/{k:<4} mu0 {:.6}  formula error {:.2e} on {} nodes  energy drop {:.4e}  exponent {:.4}",
            rep.mu0, rep.formula_max_rel_error, rep.nodes_checked, rep.energy_gap, rep.exponent
        );
    }
    Ok(())
}
