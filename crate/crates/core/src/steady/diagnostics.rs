use serde::{Deserialize, Serialize};

use super::iterate::SteadyState;
use crate::convexgeo::convexity_defect;
use crate::error::{Error, Result};
use crate::fieldcore::{Point, ScalarField};
use crate::poisson::{gradient_with, BoundaryValues, EigenEstimate};
use crate::rearrange::Monotonicity;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDefect {
    pub level: f64,
    pub nodes: usize,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub levels: Vec<LevelDefect>,
    pub max_defect: f64,
    /// Sublevel sets grow with the level.
    pub nested: bool,
}

fn sublevel_nodes(psi: &ScalarField, c: f64) -> Vec<usize> {
    (0..psi.len()).filter(|&k| psi.values()[k] <= c).collect()
}

/// Convexity defect of `{psi <= c}` for each level `c` in
/// `(min psi, max psi]`.
pub fn level_set_convexity_check(psi: &ScalarField, levels: &[f64]) -> Result<ConvexityReport> {
    let (min, max) = (psi.min(), psi.max().max(0.0));
    let grid = psi.grid();
    let mut sorted = levels.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(sorted.len());
    let mut nested = true;
    let mut prev: Option<Vec<usize>> = None;
    for &c in &sorted {
        if !(c > min && c <= max) {
            return Err(Error::LevelOutOfRange { level: c, min, max });
        }
        let nodes = sublevel_nodes(psi, c);
        let centers: Vec<Point> = nodes.iter().map(|&k| grid.node(k).position).collect();
        let defect = convexity_defect(&centers, grid.h())?;
        if let Some(p) = &prev {
            // Both lists are sorted by node index.
            let mut it = nodes.iter().peekable();
            for k in p {
                while it.next_if(|&&m| m < *k).is_some() {}
                if it.peek() != Some(&k) {
                    nested = false;
                }
            }
        }
        out.push(LevelDefect {
            level: c,
            nodes: nodes.len(),
            defect,
        });
        prev = Some(nodes);
    }
    let max_defect = out.iter().map(|l| l.defect).fold(0.0, f64::max);
    Ok(ConvexityReport {
        levels: out,
        max_defect,
        nested,
    })
}

/// Levels `min psi * (1 - q)` for `q` in `fractions`.
pub fn depth_levels(psi: &ScalarField, fractions: &[f64]) -> Vec<f64> {
    let m = psi.min();
    fractions.iter().map(|q| m * (1.0 - q)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StagnationShape {
    Point,
    Segment,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagnationLevel {
    pub delta: f64,
    pub nodes: usize,
    pub centroid: Point,
    /// Principal axis lengths `sqrt(12 * variance)`, longest first.
    pub lengths: [f64; 2],
    pub aspect: f64,
    pub axis: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagnationReport {
    pub min_psi: f64,
    pub argmin: Point,
    pub classification: StagnationShape,
    /// One point, or the two ends of the segment.
    pub location: Vec<Point>,
    /// `min |grad psi|` over nodes outside the smallest `S_delta`.
    pub gradient_floor: f64,
    pub levels: Vec<StagnationLevel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagnationOptions {
    /// Explicit `delta` values; by default dyadic fractions of the range.
    pub deltas: Option<Vec<f64>>,
    /// Smallest sublevel set (in nodes) used for classification.
    pub min_nodes: usize,
    pub boundary: BoundaryValues,
}

impl Default for StagnationOptions {
    fn default() -> Self {
        StagnationOptions {
            deltas: None,
            min_nodes: 30,
            boundary: BoundaryValues::Zero,
        }
    }
}

fn principal_axes(pts: &[Point], h: f64) -> (Point, [f64; 2], Point) {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in pts {
        let (dx, dy) = (p[0] - cx, p[1] - cy);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // Each node stands for a cell of side h.
    let cell = h * h / 12.0;
    let (sxx, syy, sxy) = (sxx / n + cell, syy / n + cell, sxy / n);
    let mean = 0.5 * (sxx + syy);
    let disc = (0.25 * (sxx - syy).powi(2) + sxy * sxy).sqrt();
    let (l1, l2) = (mean + disc, (mean - disc).max(0.0));
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    (
        [cx, cy],
        [(12.0 * l1).sqrt(), (12.0 * l2).sqrt()],
        [angle.cos(), angle.sin()],
    )
}

/// Shape of `{psi = min psi}` read off the shrinking sets
/// `S_delta = {psi <= min psi + delta}`.
///
/// Segment: aspect ratio above 8 on the three smallest sets while the long
/// axis stops shrinking. Point: the long axis keeps shrinking while the
/// aspect stays at most 8 and grows by at most half. Anything else is
/// undetermined.
pub fn stagnation_set(psi: &ScalarField, opts: &StagnationOptions) -> Result<StagnationReport> {
    let grid = psi.grid();
    let h = grid.h();
    let min = psi.min();
    let argmin = grid.node(psi.argmin()).position;
    let deltas = match &opts.deltas {
        Some(d) => d.clone(),
        None => {
            let range = psi.max() - min;
            (1..60).map(|k| range * 0.5f64.powi(k)).collect()
        }
    };
    let mut levels = Vec::new();
    let mut smallest: Option<Vec<usize>> = None;
    for &delta in &deltas {
        let nodes = sublevel_nodes(psi, min + delta);
        if nodes.len() < opts.min_nodes {
            break;
        }
        let pts: Vec<Point> = nodes.iter().map(|&k| grid.node(k).position).collect();
        let (centroid, lengths, axis) = principal_axes(&pts, h);
        levels.push(StagnationLevel {
            delta,
            nodes: nodes.len(),
            centroid,
            lengths,
            aspect: lengths[0] / lengths[1],
            axis,
        });
        smallest = Some(nodes);
    }

    let classification = if levels.len() < 3 {
        StagnationShape::Undetermined
    } else {
        let tail = &levels[levels.len() - 3..];
        let shrink = tail[2].lengths[0] / tail[0].lengths[0];
        if tail.iter().all(|l| l.aspect > 8.0) && shrink >= 0.8 {
            StagnationShape::Segment
        } else if shrink < 0.8 && tail.iter().all(|l| l.aspect <= 8.0) && tail[2].aspect <= 1.5 * tail[0].aspect {
            StagnationShape::Point
        } else {
            StagnationShape::Undetermined
        }
    };
    let location = match (classification, levels.last()) {
        (StagnationShape::Segment, Some(l)) => {
            let r = 0.5 * l.lengths[0];
            vec![
                [l.centroid[0] - r * l.axis[0], l.centroid[1] - r * l.axis[1]],
                [l.centroid[0] + r * l.axis[0], l.centroid[1] + r * l.axis[1]],
            ]
        }
        _ => vec![argmin],
    };

    let (gx, gy) = gradient_with(psi, opts.boundary)?;
    let inside = smallest.unwrap_or_default();
    let mut mask = vec![false; psi.len()];
    for k in inside {
        mask[k] = true;
    }
    let gradient_floor = (0..psi.len())
        .filter(|&k| !mask[k])
        .map(|k| gx.values()[k].hypot(gy.values()[k]))
        .fold(f64::INFINITY, f64::min);

    Ok(StagnationReport {
        min_psi: min,
        argmin,
        classification,
        location,
        gradient_floor,
        levels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArnoldVerdict {
    WeakType1,
    WeakType2,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArnoldReport {
    pub direction: Monotonicity,
    /// Smallest difference quotient of `f` at the sampling scale.
    pub inf_slope: f64,
    pub lambda1: f64,
    pub verdict: ArnoldVerdict,
    /// `omega >= 0` everywhere or `omega <= 0` everywhere.
    pub single_signed: bool,
    /// Observed `C` with `|grad omega| / |grad psi|` in `[1/C, C]`, over
    /// nodes where `|grad psi|` exceeds a tenth of its maximum.
    pub strong_form_constant: Option<f64>,
}

/// Weak Arnold criteria for the extracted profile, plus the sign property.
pub fn check_arnold(state: &SteadyState, eig: &EigenEstimate) -> Result<ArnoldReport> {
    let f = &state.profile;
    let (lo, hi) = (state.psi.min(), state.psi.max());
    let g = state.psi.grid().geometry();
    let n = g.nx.max(g.ny);
    let inf_slope = if hi > lo {
        f.sample_uniform(lo, hi, n)
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
            .fold(f64::INFINITY, f64::min)
    } else {
        0.0
    };
    let single_signed = state.omega.min() >= 0.0 || state.omega.max() <= 0.0;
    let verdict = match f.direction() {
        Monotonicity::Nondecreasing if single_signed => ArnoldVerdict::WeakType1,
        Monotonicity::Nonincreasing if inf_slope > -eig.lambda1 => ArnoldVerdict::WeakType2,
        _ => ArnoldVerdict::Fail,
    };
    Ok(ArnoldReport {
        direction: f.direction(),
        inf_slope,
        lambda1: eig.lambda1,
        verdict,
        single_signed,
        strong_form_constant: strong_form_constant(state)?,
    })
}

fn strong_form_constant(state: &SteadyState) -> Result<Option<f64>> {
    let (px, py) = gradient_with(&state.psi, BoundaryValues::Zero)?;
    let (wx, wy) = gradient_with(&state.omega, BoundaryValues::Unknown)?;
    let gp: Vec<f64> = px.values().iter().zip(py.values()).map(|(a, b)| a.hypot(*b)).collect();
    let floor = 0.1 * gp.iter().copied().fold(0.0, f64::max);
    let mut c = None::<f64>;
    for k in 0..gp.len() {
        if gp[k] > floor && floor > 0.0 {
            let gw = wx.values()[k].hypot(wy.values()[k]);
            let r = gw / gp[k];
            let ck = if r > 0.0 { r.max(1.0 / r) } else { f64::INFINITY };
            c = Some(c.map_or(ck, |c: f64| c.max(ck)));
        }
    }
    Ok(c.filter(|v| v.is_finite()))
}
