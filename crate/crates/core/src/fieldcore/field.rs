use std::sync::Arc;

use super::domain::Point;
use super::grid::Grid;
use crate::error::{Error, Result};

/// Real function sampled at the interior nodes of a grid.
#[derive(Debug, Clone)]
pub struct ScalarField {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.grid.same_as(&other.grid)
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl ScalarField {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ScalarField { grid, values })
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(Point) -> f64) -> Result<Self> {
        let values = grid.positions().map(f).collect();
        Self::new(grid, values)
    }

    pub fn constant(grid: Arc<Grid>, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![c; n])
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.len();
        ScalarField {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v < self.values[best] {
                best = k;
            }
        }
        best
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn ensure_same_grid(&self, other: &ScalarField) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Quadrature of the field: node values weighted by their share of the
    /// domain measure.
    pub fn integrate(&self) -> f64 {
        self.grid.weight() * self.values.iter().sum::<f64>()
    }

    /// `<self, other>` in the quadrature inner product.
    pub fn dot(&self, other: &ScalarField) -> Result<f64> {
        self.ensure_same_grid(other)?;
        Ok(self.grid.weight()
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .sum::<f64>())
    }

    pub fn l1_distance(&self, other: &ScalarField) -> Result<f64> {
        self.ensure_same_grid(other)?;
        Ok(self.grid.weight()
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>())
    }

    pub fn sup_distance(&self, other: &ScalarField) -> Result<f64> {
        self.ensure_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Values sorted ascending, compared by bit pattern for multiset checks.
    pub fn sorted_bits(&self) -> Vec<u64> {
        let mut v: Vec<f64> = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.into_iter().map(f64::to_bits).collect()
    }

    /// Same multiset of node values, bit for bit. Node weights are uniform,
    /// so this is equality of the discrete distributions.
    pub fn same_distribution(&self, other: &ScalarField) -> bool {
        self.grid.same_as(&other.grid) && self.sorted_bits() == other.sorted_bits()
    }
}
