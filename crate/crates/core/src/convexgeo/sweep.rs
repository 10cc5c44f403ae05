use std::io::Write;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hull::convex_hull;
use super::ring::{verify_ring_bound, ConvexRing, RingBoundReport};
use crate::error::{Error, Result};
use crate::fieldcore::{ConvexDomain, Point};

/// Per-instance seed: SplitMix64 of the master seed advanced `index + 1`
/// times.
pub fn instance_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hull of 3..=12 uniform points in the disk `B_radius(center)`, retried
/// until it has positive area.
pub fn random_convex_polygon(rng: &mut impl Rng, center: Point, radius: f64) -> ConvexDomain {
    loop {
        let n = rng.gen_range(3..=12);
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                let r = radius * rng.gen::<f64>().sqrt();
                let a = rng.gen::<f64>() * std::f64::consts::TAU;
                [center[0] + r * a.cos(), center[1] + r * a.sin()]
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(p) = ConvexDomain::polygon(hull) {
                if p.area() > 1e-3 * radius * radius {
                    return p;
                }
            }
        }
    }
}

/// Random ring: outer polygon in the unit disk, inner polygon of random
/// size and position, rejected until it sits inside the outer one. An outer
/// polygon too thin to admit any inner one is redrawn after
/// `INNER_ATTEMPTS` rejections.
pub fn random_ring(rng: &mut impl Rng) -> ConvexRing {
    loop {
        let outer = random_convex_polygon(rng, [0.0, 0.0], 1.0);
        let [x0, y0, x1, y1] = outer.bounding_box();
        let diam = outer.diameter();
        for _ in 0..INNER_ATTEMPTS {
            let c = [rng.gen_range(x0..x1), rng.gen_range(y0..y1)];
            let room = outer.inner_distance(c);
            if room <= 0.0 {
                continue;
            }
            let size = room * rng.gen_range(0.05..1.5);
            let inner = random_convex_polygon(rng, c, size);
            if let Ok(ring) = ConvexRing::new(outer.clone(), inner) {
                if ring.clearance() > 1e-3 * diam {
                    return ring;
                }
            }
        }
    }
}

const INNER_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: u64,
    pub seed: u64,
    pub ring: ConvexRing,
    pub report: RingBoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub master_seed: u64,
    pub failures_outer: usize,
    pub failures_inner: usize,
    pub min_ratio: f64,
    pub min_ratio_index: u64,
}

/// Runs `n` random rings in parallel. Records come back in index order.
pub fn ring_sweep(n: usize, master_seed: u64, tol: f64) -> Result<(Vec<SweepRecord>, SweepSummary)> {
    if n == 0 {
        return Err(Error::BadParams("need at least one instance".into()));
    }
    let records: Vec<SweepRecord> = (0..n as u64)
        .into_par_iter()
        .map(|index| {
            let seed = instance_seed(master_seed, index);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ring = random_ring(&mut rng);
            let report = verify_ring_bound(&ring, tol)?;
            Ok(SweepRecord {
                index,
                seed,
                ring,
                report,
            })
        })
        .collect::<Result<_>>()?;
    let summary = summarize(&records, master_seed);
    Ok((records, summary))
}

pub fn summarize(records: &[SweepRecord], master_seed: u64) -> SweepSummary {
    let mut min_ratio = f64::INFINITY;
    let mut min_ratio_index = 0;
    for r in records {
        if r.report.ball.ratio < min_ratio {
            min_ratio = r.report.ball.ratio;
            min_ratio_index = r.index;
        }
    }
    SweepSummary {
        instances: records.len(),
        master_seed,
        failures_outer: records.iter().filter(|r| !r.report.passes_outer).count(),
        failures_inner: records.iter().filter(|r| !r.report.passes_inner).count(),
        min_ratio,
        min_ratio_index,
    }
}

/// One JSON object per line.
pub fn write_jsonl<T: Serialize>(path: impl AsRef<Path>, items: &[T]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for it in items {
        let line = serde_json::to_string(it).map_err(|e| Error::format(path, e.to_string()))?;
        writeln!(w, "{line}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
