//! Energy extremizers on a rearrangement class and their diagnostics.

mod diagnostics;
mod iterate;
mod output;
mod polish;

pub use diagnostics::{
    check_arnold, depth_levels, level_set_convexity_check, stagnation_set, ArnoldReport,
    ArnoldVerdict, ConvexityReport, LevelDefect, StagnationLevel, StagnationOptions,
    StagnationReport, StagnationShape,
};
pub use iterate::{
    extract_profile, extremize_energy, fixed_point_residual, vorticity_sign, Extremum,
    SteadyOptions, SteadyState,
};
pub use output::{write_run_dir, SteadyReport};
