//! Experiments: level-set topology, nonexistence witnesses, the cusp patch,
//! the appendix rearrangement and ring sweeps, plus the command-line front
//! end.

mod appendix;
pub mod cli;
mod cusp;
mod geometry;
mod report;
mod topology;
mod witness;

pub use appendix::{appendix_experiment, appendix_formula, appendix_mu0, AppendixOptions, AppendixReport};
pub use cusp::{cusp_patch_experiment, CuspOptions, CuspReport};
pub use geometry::{geometry_sweep, injected_rings, write_reproducers, GeometrySweepReport, InjectedRing};
pub use report::render;
pub use topology::{check_level_topology, LevelTopology, TopologyReport, TopologyVerdict, ViolationKind};
pub use witness::{nonexistence_witness, WitnessMechanism, WitnessOptions, WitnessReport};
