//! Distribution functions, monotone inverses, rearrangements and Hölder
//! seminorms.

mod distribution;
mod profile;

use serde::{Deserialize, Serialize};

pub use distribution::{distribution_function, left_inverse, DistributionFunction};
pub use profile::{MonotoneProfile, Monotonicity};

use crate::error::{Error, Result};
use crate::fieldcore::{ConvexDomain, ScalarField};

/// Which way the rearranged field follows the ranking field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Nondecreasing in the ranking field (energy minimizer).
    Increasing,
    /// Nonincreasing in the ranking field (energy maximizer).
    Decreasing,
}

/// Node indices sorted by `(key, index)`.
pub fn ranking(key: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..key.len()).collect();
    idx.sort_by(|&a, &b| key[a].total_cmp(&key[b]).then(a.cmp(&b)));
    idx
}

fn assign_by_rank(omega0: &ScalarField, order: &[usize], dir: Order) -> Result<ScalarField> {
    let mut sorted = omega0.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    if dir == Order::Decreasing {
        sorted.reverse();
    }
    let mut out = vec![0.0; sorted.len()];
    for (rank, &node) in order.iter().enumerate() {
        out[node] = sorted[rank];
    }
    ScalarField::new(omega0.grid().clone(), out)
}

/// The field with `omega0`'s values arranged monotonically along `psi`.
/// Ties in `psi` are broken by node index.
pub fn rearrange_along(omega0: &ScalarField, psi: &ScalarField, dir: Order) -> Result<ScalarField> {
    omega0.ensure_same_grid(psi)?;
    assign_by_rank(omega0, &ranking(psi.values()), dir)
}

/// Radial nondecreasing rearrangement of a nonnegative field on a disk.
pub fn symmetric_increasing_rearrangement(u: &ScalarField) -> Result<ScalarField> {
    let ConvexDomain::Disk { center, .. } = u.grid().domain() else {
        return Err(Error::NotADisk);
    };
    let min = u.min();
    if min < 0.0 {
        return Err(Error::NegativeField(min));
    }
    let r2: Vec<f64> = u
        .grid()
        .positions()
        .map(|p| (p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2))
        .collect();
    assign_by_rank(u, &ranking(&r2), Order::Increasing)
}

/// `max |v_a - v_b| / |s_a - s_b|^beta` over all pairs of `points` with
/// abscissae in `[lo, hi]`. Points must have increasing abscissae. When the
/// values are monotone the inner scan stops as soon as the remaining
/// variation cannot beat the current maximum.
pub fn holder_seminorm_points(points: &[(f64, f64)], beta: f64, lo: f64, hi: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::BadParams(format!("exponent {beta}")));
    }
    let pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|p| p.0 >= lo && p.0 <= hi)
        .collect();
    if !(lo < hi) || pts.len() < 2 {
        return Err(Error::EmptyInterval(lo, hi));
    }
    let monotone = pts.windows(2).all(|w| w[1].1 >= w[0].1) || pts.windows(2).all(|w| w[1].1 <= w[0].1);
    let last = pts[pts.len() - 1].1;
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        let (si, vi) = pts[i];
        let reach = (last - vi).abs();
        for &(sj, vj) in &pts[i + 1..] {
            let gap = (sj - si).powf(beta);
            if monotone && reach <= best * gap {
                break;
            }
            let q = (vj - vi).abs() / gap;
            if q > best {
                best = q;
            }
        }
    }
    Ok(best)
}

/// Hölder seminorm of a profile over its breakpoints in `[lo, hi]`.
pub fn holder_seminorm(p: &MonotoneProfile, beta: f64, lo: f64, hi: f64) -> Result<f64> {
    let mut pts: Vec<(f64, f64)> = p.breakpoints().to_vec();
    // The interval ends count as evaluation points.
    for s in [lo, hi] {
        if let Err(k) = pts.binary_search_by(|q| q.0.total_cmp(&s)) {
            pts.insert(k, (s, p.eval(s)));
        }
    }
    holder_seminorm_points(&pts, beta, lo, hi)
}

/// Hölder seminorm of `p` sampled at `n + 1` equally spaced points of
/// `[lo, hi]`. Used for refinement studies, where `n` follows the mesh.
pub fn holder_seminorm_sampled(p: &MonotoneProfile, beta: f64, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::EmptyInterval(lo, hi));
    }
    holder_seminorm_points(&p.sample_uniform(lo, hi, n), beta, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::Grid;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn disk(h: f64) -> Arc<Grid> {
        Arc::new(Grid::new(ConvexDomain::unit_disk(), h).unwrap())
    }

    #[test]
    fn distribution_of_paraboloid() {
        let g = disk(1.0 / 64.0);
        let psi = ScalarField::from_fn(g.clone(), |p| p[0] * p[0] + p[1] * p[1] - 1.0).unwrap();
        let d = distribution_function(&psi);
        for t in [-0.9, -0.5, -0.1] {
            assert!((d.eval(t) - PI * (t + 1.0)).abs() < 0.02, "t = {t}");
        }
        let c = distribution_function(&ScalarField::constant(g.clone(), 2.0).unwrap());
        assert_eq!(c.eval(1.999), 0.0);
        assert_eq!(c.eval(2.0), c.total_measure());
        assert_eq!(c.plateaus(), vec![(2.0, g.len())]);
    }

    #[test]
    fn left_inverse_of_radial_and_constant() {
        let g = disk(1.0 / 64.0);
        let w = ScalarField::from_fn(g.clone(), |p| p[0] * p[0] + p[1] * p[1]).unwrap();
        let inv = left_inverse(&distribution_function(&w)).unwrap();
        assert_eq!(inv.domain().0, 0.0);
        for s in [0.3, 1.0, 2.0, 3.0] {
            assert!((inv.eval(s) - s / PI).abs() < 0.01, "s = {s}");
        }
        let c = left_inverse(&distribution_function(&ScalarField::constant(g, 3.0).unwrap())).unwrap();
        assert!([0.0, 1.0, 3.1].iter().all(|&s| c.eval(s) == 3.0));
    }

    #[test]
    fn rearrange_radial() {
        let h = 1.0 / 64.0;
        let g = disk(h);
        let w0 = ScalarField::from_fn(g.clone(), |p| 2.0 - p[0] * p[0] - p[1] * p[1]).unwrap();
        let psi = ScalarField::from_fn(g.clone(), |p| p[0] * p[0] + p[1] * p[1] - 1.0).unwrap();
        let w = rearrange_along(&w0, &psi, Order::Increasing).unwrap();
        assert!(w.same_distribution(&w0));
        let target = ScalarField::from_fn(g, |p| 1.0 + p[0] * p[0] + p[1] * p[1]).unwrap();
        assert!(w.l1_distance(&target).unwrap() < 3.0 * h * PI);
        // Fixed point.
        assert_eq!(rearrange_along(&w, &psi, Order::Increasing).unwrap(), w);
    }

    #[test]
    fn symmetric_rearrangement_of_half_disk() {
        let g = disk(1.0 / 64.0);
        let u = ScalarField::from_fn(g.clone(), |p| if p[1] > 0.0 { 1.0 } else { 0.0 }).unwrap();
        let v = symmetric_increasing_rearrangement(&u).unwrap();
        assert!(v.same_distribution(&u));
        let area = u.integrate();
        let r = (1.0 - area / PI).sqrt();
        for (k, p) in g.positions().enumerate() {
            let rr = p[0].hypot(p[1]);
            if (rr - r).abs() > 0.03 {
                assert_eq!(v.values()[k], if rr > r { 1.0 } else { 0.0 });
            }
        }
        let neg = u.map(|x| x - 0.5).unwrap();
        assert!(matches!(symmetric_increasing_rearrangement(&neg), Err(Error::NegativeField(_))));
        let sq = Arc::new(Grid::new(ConvexDomain::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), 0.05).unwrap());
        assert!(matches!(
            symmetric_increasing_rearrangement(&ScalarField::zeros(sq)),
            Err(Error::NotADisk)
        ));
    }

    #[test]
    fn holder_examples() {
        let sqrt: Vec<(f64, f64)> = (0..=400).map(|k| (k as f64 / 400.0, (k as f64 / 400.0).sqrt())).collect();
        let p = MonotoneProfile::new(sqrt, Monotonicity::Nondecreasing).unwrap();
        let s = holder_seminorm(&p, 0.5, 0.0, 1.0).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        let lin = MonotoneProfile::new(vec![(0.0, 0.0), (0.5, 1.5), (1.0, 3.0)], Monotonicity::Nondecreasing).unwrap();
        assert!((holder_seminorm(&lin, 1.0, 0.0, 1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(matches!(holder_seminorm(&lin, 1.0, 0.5, 0.5), Err(Error::EmptyInterval(..))));
    }
}
