//! Cut-cell five-point Laplacian and its preconditioned CG solver.
//!
//! At node `i` the operator is
//! `(L psi)_i = sum_d (psi_d - psi_i) / (h * a_d)`, where `a_d = h` towards an
//! interior neighbour and `a_d` is the cut distance towards the boundary,
//! where `psi_d = 0`. The matrix is symmetric and `-L` is positive definite.
//! Internally the solver works with `A = -h^2 L`, whose off-diagonal entries
//! are `-1` and whose diagonal is `sum_d h / a_d`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fieldcore::{Grid, Neighbor};

const NONE: u32 = u32::MAX;
const MIC_RELAX: f64 = 0.97;

#[derive(Debug, Clone)]
pub struct Laplacian {
    grid: Arc<Grid>,
    /// Interior neighbour indices in `Direction` order, `NONE` at the boundary.
    nbr: Vec<[u32; 4]>,
    /// Diagonal of `A`.
    diag: Vec<f64>,
    /// Pivots of the incomplete Cholesky factor of `A`.
    pivots: Vec<f64>,
}

impl Laplacian {
    pub fn new(grid: Arc<Grid>) -> Self {
        let h = grid.h();
        let n = grid.len();
        let mut nbr = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        for node in grid.nodes() {
            let mut ids = [NONE; 4];
            let mut d = 0.0;
            for (k, nb) in node.neighbors.iter().enumerate() {
                match *nb {
                    Neighbor::Interior(m) => {
                        ids[k] = m as u32;
                        d += 1.0;
                    }
                    Neighbor::Boundary(a) => d += h / a,
                }
            }
            nbr.push(ids);
            diag.push(d);
        }
        // Modified IC(0), relaxed; only west and south neighbours precede a node.
        let mut pivots = vec![0.0; n];
        for i in 0..n {
            let mut p = diag[i];
            for k in [1, 3] {
                let m = nbr[i][k];
                if m != NONE {
                    // Modified IC: fill-in from the neighbour's other upper
                    // link is lumped onto the diagonal.
                    let other = if k == 1 { nbr[m as usize][2] } else { nbr[m as usize][0] };
                    let fill = if other != NONE { MIC_RELAX } else { 0.0 };
                    p -= (1.0 + fill) / pivots[m as usize];
                }
            }
            pivots[i] = p;
        }
        Laplacian {
            grid,
            nbr,
            diag,
            pivots,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `out = A x`.
    pub(crate) fn apply_a(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut s = self.diag[i] * x[i];
            for &m in &self.nbr[i] {
                if m != NONE {
                    s -= x[m as usize];
                }
            }
            *o = s;
        }
    }

    /// `A` as a dense row-major matrix. Only sensible on small grids.
    pub(crate) fn dense_a(&self) -> Vec<f64> {
        let n = self.len();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = self.diag[i];
            for &m in &self.nbr[i] {
                if m != NONE {
                    a[i * n + m as usize] = -1.0;
                }
            }
        }
        a
    }

    /// `out = L x`, the discrete Laplacian with zero boundary values.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.apply_a(x, out);
        let s = -1.0 / (self.grid.h() * self.grid.h());
        for o in out.iter_mut() {
            *o *= s;
        }
    }

    /// `z = M^{-1} r` for the incomplete factor `M`.
    fn precondition(&self, r: &[f64], z: &mut [f64]) {
        let n = r.len();
        for i in 0..n {
            let mut s = r[i];
            for k in [1, 3] {
                let m = self.nbr[i][k];
                if m != NONE {
                    s += z[m as usize];
                }
            }
            z[i] = s / self.pivots[i];
        }
        for i in (0..n).rev() {
            let mut s = 0.0;
            for k in [0, 2] {
                let m = self.nbr[i][k];
                if m != NONE {
                    s += z[m as usize];
                }
            }
            z[i] += s / self.pivots[i];
        }
    }

    /// Solves `A x = b` by preconditioned CG from the initial `x`, until the
    /// true residual satisfies `|b - A x|_inf <= target`. Returns the
    /// iteration count and the final residual.
    pub(crate) fn pcg(
        &self,
        b: &[f64],
        x: &mut [f64],
        target: f64,
        max_iters: usize,
    ) -> Result<(usize, f64)> {
        let n = b.len();
        let mut r = vec![0.0; n];
        let mut z = vec![0.0; n];
        let mut q = vec![0.0; n];
        let true_residual = |x: &[f64], r: &mut [f64], q: &mut [f64]| -> f64 {
            self.apply_a(x, q);
            let mut m = 0.0f64;
            for i in 0..n {
                r[i] = b[i] - q[i];
                m = m.max(r[i].abs());
            }
            m
        };
        let mut res = true_residual(x, &mut r, &mut q);
        if res <= target {
            return Ok((0, res));
        }
        let mut iters = 0;
        'restart: loop {
            self.precondition(&r, &mut z);
            let mut p = z.clone();
            let mut rz = dot(&r, &z);
            loop {
                if iters >= max_iters {
                    return Err(Error::NonConvergence {
                        iterations: iters,
                        residual: res,
                    });
                }
                iters += 1;
                self.apply_a(&p, &mut q);
                let pq = dot(&p, &q);
                if !(pq > 0.0) {
                    res = true_residual(x, &mut r, &mut q);
                    if res <= target {
                        return Ok((iters, res));
                    }
                    continue 'restart;
                }
                let alpha = rz / pq;
                let mut rmax = 0.0f64;
                for i in 0..n {
                    x[i] += alpha * p[i];
                    r[i] -= alpha * q[i];
                    rmax = rmax.max(r[i].abs());
                }
                if rmax <= target {
                    res = true_residual(x, &mut r, &mut q);
                    if res <= target {
                        return Ok((iters, res));
                    }
                    continue 'restart;
                }
                res = rmax;
                self.precondition(&r, &mut z);
                let rz_new = dot(&r, &z);
                let beta = rz_new / rz;
                rz = rz_new;
                for i in 0..n {
                    p[i] = z[i] + beta * p[i];
                }
            }
        }
    }

    /// Iteration cap for a grid: `50 * max(nx, ny)`.
    pub fn iteration_cap(&self) -> usize {
        let g = self.grid.geometry();
        50 * g.nx.max(g.ny)
    }

    /// `x^T A x` split into interior edges and boundary stubs:
    /// `sum_edges (x_i - x_j)^2 + sum_stubs (h / a) x_i^2`.
    pub(crate) fn edge_form(&self, x: &[f64]) -> f64 {
        let h = self.grid.h();
        let mut s = 0.0;
        for (i, node) in self.grid.nodes().iter().enumerate() {
            for (k, nb) in node.neighbors.iter().enumerate() {
                match *nb {
                    // East and north edges, so each interior edge counts once.
                    Neighbor::Interior(m) if k == 0 || k == 2 => {
                        let d = x[i] - x[m];
                        s += d * d;
                    }
                    Neighbor::Interior(_) => {}
                    Neighbor::Boundary(a) => s += (h / a) * x[i] * x[i],
                }
            }
        }
        s
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
