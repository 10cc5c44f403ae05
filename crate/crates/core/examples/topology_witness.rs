//! Level-set topology of initial vorticities, and a computable lower bound
//! on the distance from the minimizer to the rearrangement class when the
//! topology rules out a minimizer in the class.

use std::collections::BTreeMap;

use steady_euler::fieldcore::{build_grid, sample_preset, ConvexDomain};
use steady_euler::lab::{check_level_topology, nonexistence_witness, WitnessOptions};
use steady_euler::steady::{extremize_energy, Extremum, SteadyOptions};

fn main() -> steady_euler::Result<()> {
    let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / 64.0)?;
    let cases = [
        ("radial-poly", vec![("coeffs", "1,1")]),
        ("radial-poly", vec![]),
        ("two-bump", vec![]),
        ("boundary-nonconstant", vec![]),
    ];
    for (name, kv) in cases {
        let params: BTreeMap<String, String> = kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let w0 = sample_preset(name, &params, &grid)?;
        let topo = check_level_topology(&w0, 64, 1e-3)?;
        let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default())?;
        let label = format!("{name} {kv:?}");
        match nonexistence_witness(&w0, &st, &WitnessOptions::default()) {
            Ok(w) => println!(
                "{label:<32} {:?}: {:?} witness, distance >= {:.4}",
                topo.verdict, w.mechanism, w.lower_bound
            ),
            Err(steady_euler::Error::NoViolationFound) => println!("{label:<32} {:?}", topo.verdict),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
