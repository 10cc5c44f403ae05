use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::io::{read_pairs_csv, write_pairs_csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
}

/// Monotone function of one variable: linear between breakpoints,
/// constant outside them.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneProfile {
    points: Vec<(f64, f64)>,
    direction: Monotonicity,
    domain: (f64, f64),
}

impl MonotoneProfile {
    /// Abscissae must be strictly increasing and values monotone in
    /// `direction`.
    pub fn new(points: Vec<(f64, f64)>, direction: Monotonicity) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if points.iter().any(|(s, v)| !s.is_finite() || !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.0 <= a.0 {
                return Err(Error::DegenerateInput(format!(
                    "abscissae not increasing at {}",
                    a.0
                )));
            }
            let ok = match direction {
                Monotonicity::Nondecreasing => b.1 >= a.1,
                Monotonicity::Nonincreasing => b.1 <= a.1,
            };
            if !ok {
                return Err(Error::DegenerateInput(format!(
                    "values not {direction:?} at {}",
                    a.0
                )));
            }
        }
        let domain = (points[0].0, points[points.len() - 1].0);
        Ok(MonotoneProfile {
            points,
            direction,
            domain,
        })
    }

    /// Widens the closed interval the profile is declared on; values are
    /// extended as constants.
    pub fn set_domain(&mut self, lo: f64, hi: f64) {
        self.domain = (lo.min(self.points[0].0), hi.max(self.points[self.points.len() - 1].0));
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn direction(&self) -> Monotonicity {
        self.direction
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn eval(&self, s: f64) -> f64 {
        let pts = &self.points;
        let k = pts.partition_point(|p| p.0 < s);
        if k == pts.len() {
            return pts[k - 1].1;
        }
        if pts[k].0 == s || k == 0 {
            return pts[k].1;
        }
        let (s0, v0) = pts[k - 1];
        let (s1, v1) = pts[k];
        let v = v0 + (v1 - v0) * ((s - s0) / (s1 - s0));
        v.clamp(v0.min(v1), v0.max(v1))
    }

    pub fn min_value(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest slope between consecutive breakpoints.
    pub fn min_slope(&self) -> Option<f64> {
        self.points
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
            .reduce(f64::min)
    }

    /// Values at `n + 1` equally spaced abscissae spanning `[lo, hi]`.
    pub fn sample_uniform(&self, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
        let n = n.max(1);
        (0..=n)
            .map(|k| {
                let s = if k == n { hi } else { lo + (hi - lo) * (k as f64 / n as f64) };
                (s, self.eval(s))
            })
            .collect()
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_pairs_csv(path, ["s", "value"], &self.points)
    }

    pub fn read_csv(path: impl AsRef<Path>, direction: Monotonicity) -> Result<Self> {
        let (_, rows) = read_pairs_csv(path)?;
        Self::new(rows, direction)
    }
}
