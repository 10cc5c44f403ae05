//! Discrete gradient and velocity.

use crate::error::Result;
use crate::fieldcore::{Direction, Grid, Neighbor, ScalarField};

/// What the field does at the boundary crossings of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryValues {
    /// The field vanishes on the boundary (stream functions).
    Zero,
    /// Nothing is known; use one-sided differences from interior nodes.
    Unknown,
}

/// Derivative at 0 of the quadratic through `(-a, um)`, `(0, u0)`, `(b, up)`.
fn three_point(a: f64, b: f64, um: f64, u0: f64, up: f64) -> f64 {
    (-b / (a * (a + b))) * um + ((b - a) / (a * b)) * u0 + (a / (b * (a + b))) * up
}

fn axis_derivative(grid: &Grid, values: &[f64], k: usize, plus: Direction, minus: Direction, bv: BoundaryValues) -> f64 {
    let h = grid.h();
    let node = grid.node(k);
    let u0 = values[k];
    let side = |d: Direction| -> Option<(f64, f64)> {
        match node.neighbor(d) {
            Neighbor::Interior(m) => Some((h, values[m])),
            Neighbor::Boundary(a) => match bv {
                BoundaryValues::Zero => Some((a, 0.0)),
                BoundaryValues::Unknown => None,
            },
        }
    };
    match (side(minus), side(plus)) {
        (Some((a, um)), Some((b, up))) => three_point(a, b, um, u0, up),
        (None, Some(_)) => one_sided(grid, values, k, plus, h),
        (Some(_), None) => -one_sided(grid, values, k, minus, h),
        (None, None) => 0.0,
    }
}

/// Derivative along `d` from interior nodes ahead of `k` only.
fn one_sided(grid: &Grid, values: &[f64], k: usize, d: Direction, h: f64) -> f64 {
    let Neighbor::Interior(m1) = grid.node(k).neighbor(d) else {
        return 0.0;
    };
    match grid.node(m1).neighbor(d) {
        Neighbor::Interior(m2) => (-3.0 * values[k] + 4.0 * values[m1] - values[m2]) / (2.0 * h),
        Neighbor::Boundary(_) => (values[m1] - values[k]) / h,
    }
}

/// `(d/dx psi, d/dy psi)` with centred differences in the interior and
/// cut-aware stencils next to the boundary.
pub fn gradient_with(psi: &ScalarField, bv: BoundaryValues) -> Result<(ScalarField, ScalarField)> {
    let grid = psi.grid();
    let v = psi.values();
    let n = grid.len();
    let mut gx = Vec::with_capacity(n);
    let mut gy = Vec::with_capacity(n);
    for k in 0..n {
        gx.push(axis_derivative(grid, v, k, Direction::East, Direction::West, bv));
        gy.push(axis_derivative(grid, v, k, Direction::North, Direction::South, bv));
    }
    Ok((
        ScalarField::new(grid.clone(), gx)?,
        ScalarField::new(grid.clone(), gy)?,
    ))
}

/// Gradient of a stream function vanishing on the boundary.
pub fn gradient(psi: &ScalarField) -> Result<(ScalarField, ScalarField)> {
    gradient_with(psi, BoundaryValues::Zero)
}

/// Velocity `(-d/dy psi, d/dx psi)`.
pub fn velocity(psi: &ScalarField) -> Result<(ScalarField, ScalarField)> {
    let (gx, gy) = gradient(psi)?;
    Ok((gy.scale(-1.0)?, gx))
}

/// Pointwise `|grad psi|`.
pub fn gradient_magnitude(psi: &ScalarField) -> Result<ScalarField> {
    let (gx, gy) = gradient(psi)?;
    let m = gx
        .values()
        .iter()
        .zip(gy.values())
        .map(|(a, b)| a.hypot(*b))
        .collect();
    ScalarField::new(psi.grid().clone(), m)
}
