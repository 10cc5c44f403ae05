use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::{Grid, Neighbor, ScalarField};

/// Connected components of the marked cells of a `width x height` lattice.
/// Returns per-cell labels (`usize::MAX` for unmarked cells) and the count.
pub(crate) fn label_components(width: usize, height: usize, marked: &[bool], eight: bool) -> (Vec<usize>, usize) {
    let mut labels = vec![usize::MAX; marked.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..marked.len() {
        if !marked[start] || labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(c) = stack.pop() {
            let (i, j) = ((c % width) as i64, (c / width) as i64);
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if (di == 0 && dj == 0) || (!eight && di != 0 && dj != 0) {
                        continue;
                    }
                    let (ni, nj) = (i + di, j + dj);
                    if ni < 0 || nj < 0 || ni >= width as i64 || nj >= height as i64 {
                        continue;
                    }
                    let n = nj as usize * width + ni as usize;
                    if marked[n] && labels[n] == usize::MAX {
                        labels[n] = count;
                        stack.push(n);
                    }
                }
            }
        }
        count += 1;
    }
    (labels, count)
}

/// Marks interior nodes selected by `keep` on the bounding-box lattice padded
/// by one cell on every side.
pub(crate) fn padded_mask(grid: &Grid, keep: impl Fn(usize) -> bool) -> (usize, usize, Vec<bool>) {
    let (cols, rows) = grid.shape();
    let (w, h) = (cols + 2, rows + 2);
    let mut mask = vec![false; w * h];
    for (k, node) in grid.nodes().iter().enumerate() {
        if keep(k) {
            mask[(node.j + 1) * w + node.i + 1] = true;
        }
    }
    (w, h, mask)
}

/// Component count (4-connected) and hole count (8-connected components of
/// the padded complement, minus one) of the node set selected by `keep`.
pub(crate) fn set_topology(grid: &Grid, keep: impl Fn(usize) -> bool) -> (usize, usize, usize) {
    let (w, h, mask) = padded_mask(grid, keep);
    let nodes = mask.iter().filter(|&&m| m).count();
    let (_, components) = label_components(w, h, &mask, false);
    let complement: Vec<bool> = mask.iter().map(|&m| !m).collect();
    let (_, outside) = label_components(w, h, &complement, true);
    (nodes, components, outside.saturating_sub(1))
}

/// Values of `field` extrapolated to the boundary crossing of every cut
/// link, quadratically from the two nodes behind it when they exist.
pub(crate) fn boundary_values(field: &ScalarField) -> Vec<f64> {
    let grid = field.grid();
    let v = field.values();
    let h = grid.h();
    let mut out = Vec::new();
    for (k, node) in grid.nodes().iter().enumerate() {
        for (d, nb) in node.neighbors.iter().enumerate() {
            if let Neighbor::Boundary(a) = *nb {
                let behind = |n: usize| match grid.node(n).neighbors[d ^ 1] {
                    Neighbor::Interior(m) => Some(m),
                    Neighbor::Boundary(_) => None,
                };
                let t = a / h;
                let b = match behind(k) {
                    Some(m1) => match behind(m1) {
                        Some(m2) => {
                            0.5 * (t + 1.0) * (t + 2.0) * v[k] - t * (t + 2.0) * v[m1]
                                + 0.5 * t * (t + 1.0) * v[m2]
                        }
                        None => v[k] + (v[k] - v[m1]) * t,
                    },
                    None => v[k],
                };
                out.push(b);
            }
        }
    }
    out
}

/// Why a field fails the level-set conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Some sampled `{omega0 < s}` is disconnected or has a hole.
    DisconnectedBand,
    BoundaryNonconstant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "reason")]
pub enum TopologyVerdict {
    Admissible,
    Violation(ViolationKind),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelTopology {
    pub level: f64,
    pub nodes: usize,
    pub components: usize,
    pub holes: usize,
    pub simply_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub boundary_constant: bool,
    /// Spread of the boundary values extrapolated from the cut links.
    pub boundary_oscillation: f64,
    pub tol: f64,
    pub levels: Vec<LevelTopology>,
    pub verdict: TopologyVerdict,
}

/// `n` levels spread uniformly over `[lo, hi]`.
pub(crate) fn uniform_levels(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Boundary constancy and the topology of `{omega0 < s}` at `n_levels`
/// levels in `(inf omega0 + tol, sup omega0 - tol)`. Sets use
/// 4-connectivity, complements 8-connectivity.
pub fn check_level_topology(omega0: &ScalarField, n_levels: usize, tol: f64) -> Result<TopologyReport> {
    if n_levels < 8 {
        return Err(Error::BadParams(format!("need at least 8 levels, got {n_levels}")));
    }
    if !(tol > 0.0) {
        return Err(Error::BadParams(format!("tolerance {tol}")));
    }
    let grid = omega0.grid();
    let b = boundary_values(omega0);
    let (bmin, bmax) = b.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, c), &v| (a.min(v), c.max(v)));
    let boundary_oscillation = if b.is_empty() { 0.0 } else { bmax - bmin };
    let boundary_constant = boundary_oscillation <= tol;

    let (lo, hi) = (omega0.min() + tol, omega0.max() - tol);
    let mut levels = Vec::new();
    if lo < hi {
        for s in uniform_levels(lo, hi, n_levels) {
            let v = omega0.values();
            let (nodes, components, holes) = set_topology(grid, |k| v[k] < s);
            levels.push(LevelTopology {
                level: s,
                nodes,
                components,
                holes,
                simply_connected: components == 1 && holes == 0,
            });
        }
    }
    let verdict = if !boundary_constant {
        TopologyVerdict::Violation(ViolationKind::BoundaryNonconstant)
    } else if levels.iter().any(|l| !l.simply_connected) {
        TopologyVerdict::Violation(ViolationKind::DisconnectedBand)
    } else {
        TopologyVerdict::Admissible
    };
    Ok(TopologyReport {
        boundary_constant,
        boundary_oscillation,
        tol,
        levels,
        verdict,
    })
}
