//! Test-side reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use steady_euler::fieldcore::{ConvexDomain, Grid, Point, ScalarField};

/// `J_0` by its power series; accurate for `|x| < 10`.
pub fn bessel_j0(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..80 {
        term *= q / (k as f64 * k as f64);
        sum += term;
    }
    sum
}

/// First positive zero of `J_0`, by bisection on `[2, 3]`.
pub fn j0_first_zero() -> f64 {
    let (mut a, mut b) = (2.0, 3.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if bessel_j0(a) * bessel_j0(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// `ln Gamma` by the Lanczos approximation (g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + 7.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Area of `{x^2 + y^4 < 1}`: `2 B(5/4, 1/2)`.
pub fn mu0_beta() -> f64 {
    2.0 * beta(1.25, 0.5)
}

/// Stream function of `omega = 1` on the unit square, by its double sine
/// series over odd indices.
pub fn square_psi(x: f64, y: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    for m in (1..terms).step_by(2) {
        for n in (1..terms).step_by(2) {
            let (m, n) = (m as f64, n as f64);
            s += (m * PI * x).sin() * (n * PI * y).sin() / (m * n * (m * m + n * n));
        }
    }
    -16.0 / PI.powi(4) * s
}

/// Energy of `omega = 1` on the unit square.
pub fn square_energy(terms: usize) -> f64 {
    let mut s = 0.0;
    for m in (1..terms).step_by(2) {
        for n in (1..terms).step_by(2) {
            let (m, n) = (m as f64, n as f64);
            s += 1.0 / (m * m * n * n * (m * m + n * n));
        }
    }
    32.0 / PI.powi(6) * s
}

/// Stream function of `omega = 1 + r^2` on the unit disk.
pub fn radial_psi(r: f64) -> f64 {
    r * r / 4.0 + r.powi(4) / 16.0 - 5.0 / 16.0
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Signed distance to the boundary, positive inside.
pub fn signed_distance(d: &ConvexDomain, p: Point) -> f64 {
    match d {
        ConvexDomain::Disk { center, radius } => radius - (p[0] - center[0]).hypot(p[1] - center[1]),
        ConvexDomain::Polygon { vertices } => {
            let n = vertices.len();
            let mut inside = true;
            let mut dist = f64::INFINITY;
            for i in 0..n {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                if cross < 0.0 {
                    inside = false;
                }
                dist = dist.min(segment_distance(p, a, b));
            }
            if inside {
                dist
            } else {
                -dist
            }
        }
    }
}

/// Largest ball inside `outer` and outside `inner`, by a dense grid search
/// followed by repeated zooming around the best cells.
pub fn dense_inscribed_radius(outer: &ConvexDomain, inner: &ConvexDomain) -> f64 {
    let f = |p: Point| signed_distance(outer, p).min(-signed_distance(inner, p));
    let [x0, y0, x1, y1] = outer.bounding_box();
    let n = 300;
    let step = (x1 - x0).max(y1 - y0) / n as f64;
    let mut cands: Vec<(f64, Point)> = Vec::new();
    for j in 0..=n {
        for i in 0..=n {
            let p = [x0 + i as f64 * step, y0 + j as f64 * step];
            cands.push((f(p), p));
        }
    }
    cands.sort_by(|a, b| b.0.total_cmp(&a.0));
    cands.truncate(16);
    let mut best = cands[0].0;
    for (_, c) in cands {
        // Pattern search on a 17 x 17 stencil; shrink after a miss or after
        // a few moves at the same scale, so ridges cannot stall it.
        let (mut c, mut s) = (c, step);
        let mut val = f(c);
        let mut moves = 0;
        while s > 1e-12 {
            let mut local = (val, c);
            for j in -8..=8 {
                for i in -8..=8 {
                    let p = [c[0] + i as f64 * s / 8.0, c[1] + j as f64 * s / 8.0];
                    let v = f(p);
                    if v > local.0 {
                        local = (v, p);
                    }
                }
            }
            if local.0 > val && moves < 4 {
                (val, c) = local;
                moves += 1;
            } else {
                s *= 0.5;
                moves = 0;
            }
        }
        best = best.max(val);
    }
    best
}

/// Every distinct arrangement of `values`, via next-permutation on the
/// sorted list.
pub fn distinct_permutations(values: &[f64]) -> Vec<Vec<f64>> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out = vec![v.clone()];
    loop {
        let n = v.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

/// Small grids, at most `max_nodes` interior nodes, on domains that cut
/// the lattice irregularly.
pub fn toy_grids(max_nodes: usize) -> Vec<Arc<Grid>> {
    let domains = [
        ConvexDomain::disk([0.1, 0.05], 1.0).unwrap(),
        ConvexDomain::disk([0.0, 0.0], 1.0).unwrap(),
        ConvexDomain::rectangle(0.0, 0.0, 1.0, 0.8).unwrap(),
        ConvexDomain::regular_polygon(5, [0.03, -0.02], 1.0, 0.3).unwrap(),
        ConvexDomain::polygon(vec![[0.0, 0.0], [1.3, 0.1], [0.6, 1.1]]).unwrap(),
    ];
    let mut out = Vec::new();
    for d in domains {
        for h in [0.26, 0.3, 0.36, 0.45, 0.55, 0.7] {
            if let Ok(g) = Grid::new_coarse(d.clone(), h) {
                if g.len() >= 3 && g.len() <= max_nodes {
                    out.push(Arc::new(g));
                }
            }
        }
    }
    out
}

pub fn field(grid: &Arc<Grid>, values: Vec<f64>) -> ScalarField {
    ScalarField::new(grid.clone(), values).unwrap()
}

/// Inradius of a convex polygon by bisection on `r`: the polygon shrunk by
/// `r` is the clip of the polygon by every edge's half-plane moved inward.
pub fn clip_inradius(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let area = |p: &[Point]| {
        0.5 * (0..p.len())
            .map(|i| {
                let (a, b) = (p[i], p[(i + 1) % p.len()]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    };
    let ccw = area(vertices) > 0.0;
    let shrunk_nonempty = |r: f64| {
        let mut poly: Vec<Point> = vertices.to_vec();
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            // Signed distance to the edge line, positive inside.
            let side = |p: Point| {
                let c = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                (if ccw { c } else { -c }) / len - r
            };
            let mut out = Vec::new();
            for k in 0..poly.len() {
                let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
                let (sp, sq) = (side(p), side(q));
                if sp >= 0.0 {
                    out.push(p);
                }
                if (sp >= 0.0) != (sq >= 0.0) {
                    let t = sp / (sp - sq);
                    out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
                }
            }
            poly = out;
            if poly.len() < 3 {
                return false;
            }
        }
        area(&poly).abs() > 0.0
    };
    let (mut lo, mut hi) = (0.0, 10.0);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if shrunk_nonempty(m) {
            lo = m;
        } else {
            hi = m;
        }
    }
    lo
}
