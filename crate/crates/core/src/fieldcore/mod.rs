//! Domains, grids, sampled fields, presets and persistence.

pub mod domain;
pub mod field;
pub mod grid;
pub mod io;
pub mod presets;

pub use domain::{ConvexDomain, Point};
pub use field::ScalarField;
pub use grid::{Direction, Grid, GridGeometry, Neighbor, Node};
pub use presets::{sample_preset, PatchShape, Preset, PresetParams};

/// Quadrature of `field` over its domain.
pub fn integrate(field: &ScalarField) -> f64 {
    field.integrate()
}

/// Builds the grid for `domain` at cell width `h`.
pub fn build_grid(domain: ConvexDomain, h: f64) -> crate::Result<std::sync::Arc<Grid>> {
    Grid::new(domain, h).map(std::sync::Arc::new)
}
