//! Convex planar domains: disks and convex polygons.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// A bounded convex domain in the plane.
///
/// Polygons are stored counterclockwise with duplicate and collinear
/// vertices removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexDomain {
    Disk { center: Point, radius: f64 },
    Polygon { vertices: Vec<Point> },
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Distance from `p` to the segment `[a, b]`.
pub(crate) fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

impl ConvexDomain {
    pub fn disk(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.iter().all(|c| c.is_finite())) {
            return Err(Error::DegenerateDomain(format!("disk radius {radius}")));
        }
        Ok(ConvexDomain::Disk { center, radius })
    }

    pub fn unit_disk() -> Self {
        ConvexDomain::Disk {
            center: [0.0, 0.0],
            radius: 1.0,
        }
    }

    /// Builds a convex polygon. Clockwise input is reversed; repeated and
    /// collinear vertices are dropped.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::DegenerateDomain("non-finite vertex".into()));
        }
        let scale = vertices
            .iter()
            .flatten()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
            .max(1e-300);
        let eps = 1e-12 * scale;

        let mut pts: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if pts.last().map_or(true, |&l| dist(l, v) > eps) {
                pts.push(v);
            }
        }
        while pts.len() > 1 && dist(pts[0], *pts.last().unwrap()) <= eps {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(Error::DegenerateDomain(format!(
                "{} distinct vertices",
                pts.len()
            )));
        }
        if shoelace(&pts) < 0.0 {
            pts.reverse();
        }

        // Drop collinear vertices until every turn is strict.
        let area_eps = eps * scale;
        loop {
            let n = pts.len();
            if n < 3 {
                return Err(Error::DegenerateDomain("collinear vertices".into()));
            }
            let flat = (0..n).find(|&i| {
                cross(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]).abs() <= area_eps
            });
            match flat {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
        }
        let n = pts.len();
        for i in 0..n {
            if cross(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]) < 0.0 {
                return Err(Error::DegenerateDomain("polygon is not convex".into()));
            }
        }
        if shoelace(&pts) <= 0.0 {
            return Err(Error::DegenerateDomain("zero area".into()));
        }
        Ok(ConvexDomain::Polygon { vertices: pts })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::polygon(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    pub fn regular_polygon(n: usize, center: Point, radius: f64, phase: f64) -> Result<Self> {
        let vertices = (0..n)
            .map(|k| {
                let a = phase + 2.0 * PI * k as f64 / n as f64;
                [center[0] + radius * a.cos(), center[1] + radius * a.sin()]
            })
            .collect();
        Self::polygon(vertices)
    }

    pub fn area(&self) -> f64 {
        match self {
            ConvexDomain::Disk { radius, .. } => PI * radius * radius,
            ConvexDomain::Polygon { vertices } => shoelace(vertices),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            ConvexDomain::Disk { radius, .. } => 2.0 * PI * radius,
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).map(|i| dist(vertices[i], vertices[(i + 1) % n])).sum()
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexDomain::Disk { radius, .. } => 2.0 * radius,
            ConvexDomain::Polygon { vertices } => {
                let mut d: f64 = 0.0;
                for (i, a) in vertices.iter().enumerate() {
                    for b in &vertices[i + 1..] {
                        d = d.max(dist(*a, *b));
                    }
                }
                d
            }
        }
    }

    /// `(xmin, ymin, xmax, ymax)`.
    pub fn bounding_box(&self) -> [f64; 4] {
        match self {
            ConvexDomain::Disk { center, radius } => [
                center[0] - radius,
                center[1] - radius,
                center[0] + radius,
                center[1] + radius,
            ],
            ConvexDomain::Polygon { vertices } => vertices.iter().fold(
                [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY],
                |b, v| [b[0].min(v[0]), b[1].min(v[1]), b[2].max(v[0]), b[3].max(v[1])],
            ),
        }
    }

    pub fn centroid(&self) -> Point {
        match self {
            ConvexDomain::Disk { center, .. } => *center,
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    let p = vertices[i];
                    let q = vertices[(i + 1) % n];
                    let c = p[0] * q[1] - q[0] * p[1];
                    cx += (p[0] + q[0]) * c;
                    cy += (p[1] + q[1]) * c;
                    a2 += c;
                }
                [cx / (3.0 * a2), cy / (3.0 * a2)]
            }
        }
    }

    /// Signed distance to the boundary: positive inside, and for polygons
    /// the minimum over the supporting half-planes (exact inside, a lower
    /// bound on the true distance outside).
    pub fn inner_distance(&self, p: Point) -> f64 {
        match self {
            ConvexDomain::Disk { center, radius } => radius - dist(p, *center),
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let a = vertices[i];
                        let b = vertices[(i + 1) % n];
                        cross(a, b, p) / dist(a, b)
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.inner_distance(p) >= 0.0
    }

    /// Euclidean distance from `p` to the closed domain (zero inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            ConvexDomain::Disk { center, radius } => (dist(p, *center) - radius).max(0.0),
            ConvexDomain::Polygon { vertices } => {
                if self.inner_distance(p) >= 0.0 {
                    return 0.0;
                }
                let n = vertices.len();
                (0..n)
                    .map(|i| segment_distance(p, vertices[i], vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Distance from `p` to the boundary curve, inside or out.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        match self {
            ConvexDomain::Disk { center, radius } => (dist(p, *center) - radius).abs(),
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| segment_distance(p, vertices[i], vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Distance travelled from the interior point `p` along the unit vector
    /// `dir` before leaving the domain.
    pub fn exit_distance(&self, p: Point, dir: Point) -> f64 {
        match self {
            ConvexDomain::Disk { center, radius } => {
                let q = [p[0] - center[0], p[1] - center[1]];
                let b = q[0] * dir[0] + q[1] * dir[1];
                let c = q[0] * q[0] + q[1] * q[1] - radius * radius;
                let disc = (b * b - c).max(0.0);
                // Stable root of t^2 + 2bt + c = 0 with t >= 0.
                if b > 0.0 {
                    -c / (b + disc.sqrt())
                } else {
                    -b + disc.sqrt()
                }
            }
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                let mut best = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let len = dist(a, b);
                    let normal = [(b[1] - a[1]) / len, -(b[0] - a[0]) / len];
                    let speed = normal[0] * dir[0] + normal[1] * dir[1];
                    if speed > 0.0 {
                        let gap = normal[0] * (a[0] - p[0]) + normal[1] * (a[1] - p[1]);
                        best = best.min(gap.max(0.0) / speed);
                    }
                }
                best
            }
        }
    }

    /// Radius of the largest inscribed disk.
    pub fn inradius(&self) -> f64 {
        match self {
            ConvexDomain::Disk { radius, .. } => *radius,
            ConvexDomain::Polygon { vertices } => {
                // Chebyshev centre: maximize r subject to n_i . x + r <= b_i
                // for the unit outward edge normals. The optimum of this
                // three-variable program is attained where three
                // constraints are active, so enumerate edge triples.
                let m = vertices.len();
                let edges: Vec<(f64, f64, f64)> = (0..m)
                    .map(|i| {
                        let (a, b) = (vertices[i], vertices[(i + 1) % m]);
                        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                        let len = dx.hypot(dy);
                        let (nx, ny) = (dy / len, -dx / len);
                        (nx, ny, nx * a[0] + ny * a[1])
                    })
                    .collect();
                let slack = 1e-12 * self.diameter();
                let mut best = 0.0f64;
                for i in 0..m {
                    for j in i + 1..m {
                        for k in j + 1..m {
                            let rows = [edges[i], edges[j], edges[k]];
                            let det = |c: [[f64; 3]; 3]| {
                                c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
                                    - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
                                    + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0])
                            };
                            let a = rows.map(|(nx, ny, _)| [nx, ny, 1.0]);
                            let d = det(a);
                            if d.abs() < 1e-14 {
                                continue;
                            }
                            let solve = |col: usize| {
                                let mut c = a;
                                for (r, row) in rows.iter().enumerate() {
                                    c[r][col] = row.2;
                                }
                                det(c) / d
                            };
                            let (x, y, r) = (solve(0), solve(1), solve(2));
                            if r > best && edges.iter().all(|&(nx, ny, b)| nx * x + ny * y + r <= b + slack) {
                                best = r;
                            }
                        }
                    }
                }
                best
            }
        }
    }

    /// Vertex list; disks are sampled with `n` points.
    pub fn outline(&self, n: usize) -> Vec<Point> {
        match self {
            ConvexDomain::Disk { center, radius } => (0..n)
                .map(|k| {
                    let a = 2.0 * PI * k as f64 / n as f64;
                    [center[0] + radius * a.cos(), center[1] + radius * a.sin()]
                })
                .collect(),
            ConvexDomain::Polygon { vertices } => vertices.clone(),
        }
    }
}

pub(crate) fn shoelace(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n)
        .map(|i| {
            let p = pts[i];
            let q = pts[(i + 1) % n];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
}
