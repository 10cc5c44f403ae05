use crate::error::{Error, Result};
use crate::fieldcore::ScalarField;
use crate::poisson::Laplacian;

/// Grids up to this size get the exact swap descent after the iteration.
pub(crate) const POLISH_MAX_NODES: usize = 400;
/// Grids up to this size also try cyclic moves of three nodes, and start
/// the descent from every distinct iterate.
pub(crate) const CYCLE_MAX_NODES: usize = 64;
/// Starts kept on larger grids, lowest energy first.
pub(crate) const MAX_STARTS: usize = 8;

/// Inverse of a symmetric positive definite matrix via Cholesky.
fn spd_inverse(a: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > 0.0) {
            return Err(Error::BadParams("operator is not positive definite".into()));
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    // Columns of A^{-1} by forward and back substitution.
    let mut inv = vec![0.0; n * n];
    let mut y = vec![0.0; n];
    for c in 0..n {
        for i in 0..n {
            let mut s = if i == c { 1.0 } else { 0.0 };
            for k in 0..i {
                s -= l[i * n + k] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[k * n + i] * inv[k * n + c];
            }
            inv[i * n + c] = s / l[i * n + i];
        }
    }
    Ok(inv)
}

/// Change in `1/2 w^T Q w` when `w[idx[m]]` becomes `w[idx[(m + 1) % len]]`.
fn move_delta(q: &[f64], n: usize, w: &[f64], qw: &[f64], idx: &[usize]) -> f64 {
    let d: Vec<f64> = (0..idx.len()).map(|m| w[idx[(m + 1) % idx.len()]] - w[idx[m]]).collect();
    let mut de = 0.0;
    for (a, &i) in idx.iter().enumerate() {
        de += d[a] * qw[i];
        for (b, &j) in idx.iter().enumerate() {
            de += 0.5 * d[a] * d[b] * q[i * n + j];
        }
    }
    de
}

/// `Q = h^4 A^{-1}`, the exact energy form `E(omega) = 1/2 omega^T Q omega`
/// of the solver's operator, row-major.
pub(crate) fn energy_form(lap: &Laplacian) -> Result<Vec<f64>> {
    let h2 = lap.grid().h() * lap.grid().h();
    Ok(spd_inverse(&lap.dense_a(), lap.len())?.into_iter().map(|v| h2 * h2 * v).collect())
}

/// Descent on `1/2 omega^T Q omega` over swaps (and, on tiny grids,
/// three-cycles) of node values. `sign` is `1` to lower the energy and `-1`
/// to raise it. Returns the final energy.
pub(crate) fn swap_descent(q: &[f64], omega: &mut ScalarField, sign: f64) -> Result<f64> {
    let n = omega.len();
    let mut w = omega.values().to_vec();
    let mut qw: Vec<f64> = (0..n).map(|i| (0..n).map(|j| q[i * n + j] * w[j]).sum()).collect();
    let scale = 0.5 * w.iter().zip(&qw).map(|(a, b)| a * b).sum::<f64>();
    let floor = 1e-13 * scale.abs().max(f64::MIN_POSITIVE);
    let mut moves = 0;
    let mut energy = scale;
    loop {
        let mut best = (-floor, Vec::new());
        for i in 0..n {
            for j in i + 1..n {
                if w[i] == w[j] {
                    continue;
                }
                let d = w[j] - w[i];
                let de = sign * (d * (qw[i] - qw[j]) + 0.5 * d * d * (q[i * n + i] + q[j * n + j] - 2.0 * q[i * n + j]));
                if de < best.0 {
                    best = (de, vec![i, j]);
                }
                if n > CYCLE_MAX_NODES {
                    continue;
                }
                for k in j + 1..n {
                    for idx in [[i, j, k], [i, k, j]] {
                        let de = sign * move_delta(q, n, &w, &qw, &idx);
                        if de < best.0 {
                            best = (de, idx.to_vec());
                        }
                    }
                }
            }
        }
        let idx = best.1;
        if idx.is_empty() {
            break;
        }
        energy += sign * best.0;
        let old: Vec<f64> = idx.iter().map(|&i| w[i]).collect();
        for m in 0..idx.len() {
            let d = old[(m + 1) % idx.len()] - old[m];
            w[idx[m]] = old[(m + 1) % idx.len()];
            for (k, v) in qw.iter_mut().enumerate() {
                *v += d * q[k * n + idx[m]];
            }
        }
        moves += 1;
    }
    if moves > 0 {
        *omega = ScalarField::new(omega.grid().clone(), w)?;
    }
    Ok(energy)
}
