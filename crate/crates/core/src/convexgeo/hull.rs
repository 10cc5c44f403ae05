use crate::error::{Error, Result};
use crate::fieldcore::Point;

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull by Andrew's monotone chain, counterclockwise, without
/// collinear points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Shoelace area of a simple polygon (positive when counterclockwise).
pub fn polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

/// `(|hull| - |S|) / |S|` for the union `S` of axis-aligned squares of side
/// `cell` centred at `centers`. The squares must not overlap.
pub fn convexity_defect(centers: &[Point], cell: f64) -> Result<f64> {
    if centers.is_empty() {
        return Err(Error::EmptySet);
    }
    if !(cell > 0.0) {
        return Err(Error::BadParams(format!("cell size {cell}")));
    }
    let r = 0.5 * cell;
    let mut corners = Vec::with_capacity(4 * centers.len());
    for c in centers {
        for (dx, dy) in [(-r, -r), (r, -r), (r, r), (-r, r)] {
            corners.push([c[0] + dx, c[1] + dy]);
        }
    }
    let hull = convex_hull(&corners);
    let set = centers.len() as f64 * cell * cell;
    Ok(((polygon_area(&hull) - set) / set).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(polygon_area(&h), 1.0);
    }

    #[test]
    fn l_shape_defect() {
        // Three quadrants of the unit square: the hull cuts the missing
        // quadrant along its diagonal.
        for n in [2usize, 8, 32] {
            let cell = 1.0 / n as f64;
            let mut centers = Vec::new();
            for j in 0..n {
                for i in 0..n {
                    if !(2 * i >= n && 2 * j >= n) {
                        centers.push([(i as f64 + 0.5) * cell, (j as f64 + 0.5) * cell]);
                    }
                }
            }
            let d = convexity_defect(&centers, cell).unwrap();
            assert!((d - 1.0 / 6.0).abs() < 1e-12, "n = {n}: {d}");
        }
        assert!(matches!(convexity_defect(&[], 1.0), Err(Error::EmptySet)));
        assert_eq!(convexity_defect(&[[0.0, 0.0], [1.0, 0.0]], 1.0).unwrap(), 0.0);
    }
}
