//! Convexity of the minimizer's sublevel sets and the shape of its
//! stagnation set on a disk, a square and a pentagon.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use steady_euler::fieldcore::{build_grid, sample_preset, ConvexDomain};
use steady_euler::steady::{
    depth_levels, extremize_energy, level_set_convexity_check, stagnation_set, Extremum, StagnationOptions,
    SteadyOptions,
};

fn main() -> steady_euler::Result<()> {
    let depths: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
    let cases = [
        ("disk", ConvexDomain::unit_disk(), "2,-1"),
        ("square", ConvexDomain::rectangle(-1.0, -1.0, 1.0, 1.0)?, "3,-1"),
        ("pentagon", ConvexDomain::regular_polygon(5, [0.0, 0.0], 1.0, PI / 2.0)?, "2,-1"),
    ];
    for (name, d, coeffs) in cases {
        for k in [32, 64] {
            let grid = build_grid(d.clone(), 1.0 / k as f64)?;
            let params = BTreeMap::from([("coeffs".to_string(), coeffs.to_string())]);
            let w0 = sample_preset("radial-poly", &params, &grid)?;
            let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default())?;
            let conv = level_set_convexity_check(&st.psi, &depth_levels(&st.psi, &depths))?;
            let stag = stagnation_set(&st.psi, &StagnationOptions::default())?;
            println!(
                "{name:<8} h = 1/{k:<3} max defect {:.4} nested {}  stagnation {:?} at ({:.3}, {:.3}), gradient floor {:.2e}",
                conv.max_defect, conv.nested, stag.classification, stag.argmin[0], stag.argmin[1], stag.gradient_floor
            );
        }
    }
    Ok(())
}
