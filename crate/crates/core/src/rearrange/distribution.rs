use std::path::Path;

use super::profile::{MonotoneProfile, Monotonicity};
use crate::error::{Error, Result};
use crate::fieldcore::io::{read_pairs_csv, write_pairs_csv};
use crate::fieldcore::ScalarField;

/// `t -> |{field <= t}|` on the grid measure, stored at the distinct values
/// of the field.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionFunction {
    /// Distinct values, strictly increasing.
    values: Vec<f64>,
    /// Number of nodes with value `<= values[i]`.
    cumulative: Vec<usize>,
    /// Measure per node.
    cell: f64,
}

impl DistributionFunction {
    pub fn new(field: &ScalarField) -> Self {
        let mut v = field.values().to_vec();
        v.sort_by(f64::total_cmp);
        Self::from_sorted(&v, field.grid().weight())
    }

    /// From ascending node values and the per-node measure.
    pub fn from_sorted(sorted: &[f64], cell: f64) -> Self {
        let mut values = Vec::new();
        let mut cumulative = Vec::new();
        for (k, &t) in sorted.iter().enumerate() {
            if values.last() == Some(&t) {
                *cumulative.last_mut().unwrap() = k + 1;
            } else {
                values.push(t);
                cumulative.push(k + 1);
            }
        }
        DistributionFunction {
            values,
            cumulative,
            cell,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    /// Number of nodes.
    pub fn count(&self) -> usize {
        self.cumulative.last().copied().unwrap_or(0)
    }

    pub fn total_measure(&self) -> f64 {
        self.mass(self.count())
    }

    fn mass(&self, nodes: usize) -> f64 {
        nodes as f64 * self.cell
    }

    pub fn min_value(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Distinct values of the field.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(t_i, |{field <= t_i}|)`.
    pub fn breakpoints(&self) -> Vec<(f64, f64)> {
        self.values
            .iter()
            .zip(&self.cumulative)
            .map(|(&t, &c)| (t, self.mass(c)))
            .collect()
    }

    /// `(t_i, node count)` for every value shared by more than one node.
    pub fn plateaus(&self) -> Vec<(f64, usize)> {
        let mut prev = 0;
        let mut out = Vec::new();
        for (&t, &c) in self.values.iter().zip(&self.cumulative) {
            if c - prev > 1 {
                out.push((t, c - prev));
            }
            prev = c;
        }
        out
    }

    /// Step-rule evaluation: right-continuous, `0` below the minimum.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= t);
        if k == 0 {
            0.0
        } else {
            self.mass(self.cumulative[k - 1])
        }
    }

    /// Continuous variant through the mid-mass of each value's atom.
    pub fn linearized(&self) -> Result<MonotoneProfile> {
        if self.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut prev = 0;
        let mut pts = Vec::with_capacity(self.values.len());
        for (&t, &c) in self.values.iter().zip(&self.cumulative) {
            pts.push((t, (prev + c) as f64 * 0.5 * self.cell));
            prev = c;
        }
        MonotoneProfile::new(pts, Monotonicity::Nondecreasing)
    }

    /// Continuous nondecreasing inverse on `[0, |Omega|]`. The node of rank
    /// `k` sits at mass `(k + 1/2) * cell`; an atom spanning ranks
    /// `a..a+m` contributes its two end ranks, so plateaus become flat
    /// pieces and gaps between values are crossed linearly.
    pub fn left_inverse(&self) -> Result<MonotoneProfile> {
        if self.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut pts = Vec::with_capacity(2 * self.values.len());
        let mut prev = 0usize;
        for (&t, &c) in self.values.iter().zip(&self.cumulative) {
            pts.push((rank_mass(prev, self.cell), t));
            if c - prev > 1 {
                pts.push((rank_mass(c - 1, self.cell), t));
            }
            prev = c;
        }
        let mut p = MonotoneProfile::new(pts, Monotonicity::Nondecreasing)?;
        p.set_domain(0.0, self.total_measure());
        Ok(p)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_pairs_csv(path, ["t", "measure"], &self.breakpoints())
    }

    /// Reads breakpoints written by [`Self::write_csv`]; `cell` is the
    /// per-node measure of the grid they came from.
    pub fn read_csv(path: impl AsRef<Path>, cell: f64) -> Result<Self> {
        let path = path.as_ref();
        let (_, rows) = read_pairs_csv(path)?;
        let mut values = Vec::with_capacity(rows.len());
        let mut cumulative = Vec::with_capacity(rows.len());
        for (t, m) in rows {
            let c = (m / cell).round();
            if c < 1.0 || values.last().is_some_and(|&v| v >= t) {
                return Err(Error::format(path, "breakpoints not increasing"));
            }
            values.push(t);
            cumulative.push(c as usize);
        }
        Ok(DistributionFunction {
            values,
            cumulative,
            cell,
        })
    }
}

/// Measure coordinate of the node of rank `k`.
fn rank_mass(k: usize, cell: f64) -> f64 {
    (k as f64 + 0.5) * cell
}

/// Distribution function of `field`.
pub fn distribution_function(field: &ScalarField) -> DistributionFunction {
    DistributionFunction::new(field)
}

/// Left inverse of a distribution function.
pub fn left_inverse(d: &DistributionFunction) -> Result<MonotoneProfile> {
    d.left_inverse()
}
