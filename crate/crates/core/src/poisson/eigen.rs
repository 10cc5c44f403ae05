//! Lowest Dirichlet eigenvalue of `-Delta` by inverse iteration.

use std::sync::Arc;

use super::operator::{dot, Laplacian};
use crate::error::{Error, Result};
use crate::fieldcore::{Grid, ScalarField};

#[derive(Debug, Clone)]
pub struct EigenEstimate {
    pub lambda1: f64,
    /// Positive eigenfunction with unit quadrature `L^2` norm.
    pub eigenfield: ScalarField,
    /// `|-L v - lambda v|` in the quadrature `L^2` norm, for unit `v`.
    pub rayleigh_residual: f64,
    pub iterations: usize,
}

/// Inverse iteration on `-L`; stops once the Rayleigh residual is at most
/// `tol * lambda`.
pub fn first_eigenvalue(grid: &Arc<Grid>, tol: f64) -> Result<EigenEstimate> {
    if !(tol > 0.0) {
        return Err(Error::BadParams(format!("tolerance {tol}")));
    }
    let lap = Laplacian::new(grid.clone());
    let n = grid.len();
    let h2 = grid.h() * grid.h();
    let w = grid.weight();
    let norm = |v: &[f64]| (w * dot(v, v)).sqrt();

    let mut v = vec![1.0; n];
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut av = vec![0.0; n];
    let max_outer = 500;
    let mut residual = f64::INFINITY;
    for it in 1..=max_outer {
        // A = -h^2 L, so -L v = lambda v  <=>  A v = h^2 lambda v.
        let mut x = v.clone();
        let bmax = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        lap.pcg(&v, &mut x, 1e-10 * bmax, lap.iteration_cap())?;
        let nx = norm(&x);
        x.iter_mut().for_each(|t| *t /= nx);
        v = x;
        lap.apply_a(&v, &mut av);
        let lambda = dot(&v, &av) / dot(&v, &v) / h2;
        let r: Vec<f64> = av.iter().zip(&v).map(|(a, b)| a / h2 - lambda * b).collect();
        residual = norm(&r);
        if residual <= tol * lambda {
            if v.iter().sum::<f64>() < 0.0 {
                v.iter_mut().for_each(|t| *t = -*t);
            }
            return Ok(EigenEstimate {
                lambda1: lambda,
                eigenfield: ScalarField::new(grid.clone(), v)?,
                rayleigh_residual: residual,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: max_outer,
        residual,
    })
}
