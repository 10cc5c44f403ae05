use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::{ConvexDomain, Point};

/// `(8 + 3 pi + pi^3 / 4)^{-1}`.
pub fn ring_constant() -> f64 {
    1.0 / (8.0 + 3.0 * PI + PI.powi(3) / 4.0)
}

/// Region between nested convex sets: `outer \ closure(inner)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRing {
    pub outer: ConvexDomain,
    pub inner: ConvexDomain,
}

impl ConvexRing {
    pub fn new(outer: ConvexDomain, inner: ConvexDomain) -> Result<Self> {
        let ring = ConvexRing { outer, inner };
        let gap = ring.clearance();
        if !(gap > 0.0) {
            return Err(Error::EmptyRing(gap));
        }
        Ok(ring)
    }

    /// `min over closure(inner)` of the distance to the outer boundary,
    /// negative when the inner set pokes out. The inner distance of a
    /// convex set is concave, so the minimum sits at a vertex of a polygon
    /// or at the far point of a disk.
    pub fn clearance(&self) -> f64 {
        match &self.inner {
            ConvexDomain::Polygon { vertices } => vertices
                .iter()
                .map(|&v| self.outer.inner_distance(v))
                .fold(f64::INFINITY, f64::min),
            ConvexDomain::Disk { center, radius } => self.outer.inner_distance(*center) - radius,
        }
    }

    /// `|A \ closure(D)|`.
    pub fn area(&self) -> f64 {
        self.outer.area() - self.inner.area()
    }

    /// Radius of the largest ball centred at `x` inside the ring; negative
    /// outside it.
    pub fn clearance_at(&self, x: Point) -> f64 {
        let to_outer = self.outer.inner_distance(x);
        let out_of_inner = {
            let d = self.inner.distance_to(x);
            if d > 0.0 {
                d
            } else {
                -self.inner.inner_distance(x)
            }
        };
        to_outer.min(out_of_inner)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingBallReport {
    pub center: Point,
    pub radius: f64,
    /// `R diam(A) / |A \ D|`.
    pub ratio: f64,
    /// `R diam(D) / |A \ D|`.
    pub ratio_inner: f64,
}

fn nelder_mead(f: &impl Fn(Point) -> f64, x0: Point, step: f64, iters: usize) -> (Point, f64) {
    // Maximizes f.
    let mut s: Vec<(Point, f64)> = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]]
        .into_iter()
        .map(|p| (p, f(p)))
        .collect();
    for _ in 0..iters {
        s.sort_by(|a, b| b.1.total_cmp(&a.1));
        let size = (s[1].0[0] - s[0].0[0]).abs().max((s[1].0[1] - s[0].0[1]).abs())
            + (s[2].0[0] - s[0].0[0]).abs().max((s[2].0[1] - s[0].0[1]).abs());
        if size < 1e-15 {
            break;
        }
        let c = [(s[0].0[0] + s[1].0[0]) / 2.0, (s[0].0[1] + s[1].0[1]) / 2.0];
        let w = s[2].0;
        let at = |t: f64| [c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])];
        let r = at(-1.0);
        let fr = f(r);
        if fr > s[0].1 {
            let e = at(-2.0);
            let fe = f(e);
            s[2] = if fe > fr { (e, fe) } else { (r, fr) };
        } else if fr > s[1].1 {
            s[2] = (r, fr);
        } else {
            let k = if fr > s[2].1 { at(-0.5) } else { at(0.5) };
            let fk = f(k);
            if fk > s[2].1.max(fr) {
                s[2] = (k, fk);
            } else {
                let b = s[0].0;
                for v in s.iter_mut().skip(1) {
                    let p = [(v.0[0] + b[0]) / 2.0, (v.0[1] + b[1]) / 2.0];
                    *v = (p, f(p));
                }
            }
        }
    }
    s.sort_by(|a, b| b.1.total_cmp(&a.1));
    s[0]
}

fn compass(f: &impl Fn(Point) -> f64, mut x: Point, mut fx: f64, mut step: f64, floor: f64) -> (Point, f64) {
    let dirs: [Point; 8] = {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [d, d], [-d, d], [d, -d], [-d, -d]]
    };
    // Best of the eight moves; the step halves on a miss and also after a
    // run of moves, since along a ridge every move may gain almost nothing.
    let mut run = 0;
    while step > floor {
        let mut best = (x, fx);
        for u in dirs {
            let y = [x[0] + step * u[0], x[1] + step * u[1]];
            let fy = f(y);
            if fy > best.1 {
                best = (y, fy);
            }
        }
        if best.1 > fx && run < 16 {
            (x, fx) = best;
            run += 1;
        } else {
            step *= 0.5;
            run = 0;
        }
    }
    (x, fx)
}

/// Largest ball inside the ring: coarse scan of the outer bounding box,
/// then Nelder–Mead and compass polishing of the best starts. `tol` bounds
/// the final step of the polish.
pub fn inscribed_ball(ring: &ConvexRing, tol: f64) -> Result<RingBallReport> {
    let gap = ring.clearance();
    if !(gap > tol.max(0.0)) {
        return Err(Error::EmptyRing(gap));
    }
    let diam = ring.outer.diameter();
    let [x0, y0, x1, y1] = ring.outer.bounding_box();
    let step = (gap / 8.0).max(diam / 160.0);
    let nx = ((x1 - x0) / step).ceil() as usize + 1;
    let ny = ((y1 - y0) / step).ceil() as usize + 1;
    let f = |p: Point| ring.clearance_at(p);

    let mut samples = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let p = [x0 + i as f64 * step, y0 + j as f64 * step];
            samples.push((p, f(p)));
        }
    }
    samples.sort_by(|a, b| b.1.total_cmp(&a.1));
    // Starts: the best samples, kept a few steps apart.
    let mut starts: Vec<Point> = Vec::new();
    for (p, _) in &samples {
        if starts
            .iter()
            .all(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > 3.0 * step)
        {
            starts.push(*p);
            if starts.len() == 12 {
                break;
            }
        }
    }

    let floor = tol.max(1e-6 * diam) * 1e-2;
    let mut best = (starts[0], f(starts[0]));
    for s in starts {
        let (p, fp) = nelder_mead(&f, s, step, 200);
        let (p, fp) = compass(&f, p, fp, step, floor);
        if fp > best.1 {
            best = (p, fp);
        }
    }
    let (center, radius) = best;
    if !(radius > 0.0) {
        return Err(Error::EmptyRing(radius));
    }
    let area = ring.area();
    Ok(RingBallReport {
        center,
        radius,
        ratio: radius * diam / area,
        ratio_inner: radius * ring.inner.diameter() / area,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeReport {
    pub r: f64,
    /// `|{x not in A : dist(x, A) <= r}|`.
    pub area: f64,
    /// `2 pi r diam(A) + pi r^2`.
    pub bound: f64,
    pub holds: bool,
}

/// Area of the outer tube of width `r` around a convex set: for convex
/// sets this is `perimeter * r + pi r^2` (Steiner).
pub fn tube_area(a: &ConvexDomain, r: f64) -> Result<TubeReport> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::BadParams(format!("tube width {r}")));
    }
    let area = a.perimeter() * r + PI * r * r;
    let bound = 2.0 * PI * r * a.diameter() + PI * r * r;
    Ok(TubeReport {
        r,
        area,
        bound,
        holds: area <= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingBoundReport {
    pub ball: RingBallReport,
    pub ring_area: f64,
    pub diam_outer: f64,
    pub diam_inner: f64,
    pub epsilon: f64,
    /// `epsilon |A \ D| / diam(A)`.
    pub required_outer: f64,
    /// `epsilon |A \ D| / diam(D)`.
    pub required_inner: f64,
    pub passes_outer: bool,
    /// Observed only.
    pub passes_inner: bool,
}

/// Inscribed ball against `epsilon |A \ D| / diam`, for both diameters.
pub fn verify_ring_bound(ring: &ConvexRing, tol: f64) -> Result<RingBoundReport> {
    let ball = inscribed_ball(ring, tol)?;
    let eps = ring_constant();
    let ring_area = ring.area();
    let diam_outer = ring.outer.diameter();
    let diam_inner = ring.inner.diameter();
    let required_outer = eps * ring_area / diam_outer;
    let required_inner = eps * ring_area / diam_inner;
    Ok(RingBoundReport {
        passes_outer: ball.radius >= required_outer,
        passes_inner: ball.radius >= required_inner,
        ball,
        ring_area,
        diam_outer,
        diam_inner,
        epsilon: eps,
        required_outer,
        required_inner,
    })
}
