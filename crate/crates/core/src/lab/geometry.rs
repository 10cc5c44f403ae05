use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::convexgeo::{ring_sweep, verify_ring_bound, ConvexRing, RingBoundReport, SweepRecord, SweepSummary};
use crate::error::{Error, Result};
use crate::fieldcore::io::write_json;
use crate::fieldcore::ConvexDomain;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InjectedRing {
    pub name: String,
    pub ring: ConvexRing,
    pub report: RingBoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySweepReport {
    pub summary: SweepSummary,
    /// Fixed rings run alongside the random ones.
    pub injected: Vec<InjectedRing>,
    /// Indices of random rings that fail the `diam(A)` bound.
    pub failures: Vec<u64>,
}

/// Concentric disks of radii 1 and 1/2, and the unit disk around a disk of
/// radius 0.01.
pub fn injected_rings() -> Result<Vec<(String, ConvexRing)>> {
    let unit = ConvexDomain::unit_disk();
    Ok(vec![
        (
            "concentric-disks".to_string(),
            ConvexRing::new(unit.clone(), ConvexDomain::disk([0.0, 0.0], 0.5)?)?,
        ),
        (
            "tiny-inner-disk".to_string(),
            ConvexRing::new(unit, ConvexDomain::disk([0.0, 0.0], 0.01)?)?,
        ),
    ])
}

/// Runs `n` random rings from `seed` plus the injected rings.
pub fn geometry_sweep(n: usize, seed: u64, tol: f64) -> Result<(Vec<SweepRecord>, GeometrySweepReport)> {
    let (records, summary) = ring_sweep(n, seed, tol)?;
    let injected = injected_rings()?
        .into_iter()
        .map(|(name, ring)| {
            let report = verify_ring_bound(&ring, tol)?;
            Ok(InjectedRing { name, ring, report })
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = records.iter().filter(|r| !r.report.passes_outer).map(|r| r.index).collect();
    Ok((
        records,
        GeometrySweepReport {
            summary,
            injected,
            failures,
        },
    ))
}

/// Writes `failure_<index>.json` for every record failing the `diam(A)`
/// bound. Returns the paths written.
pub fn write_reproducers(dir: impl AsRef<Path>, records: &[SweepRecord]) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let mut out = Vec::new();
    for r in records.iter().filter(|r| !r.report.passes_outer) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("failure_{}.json", r.index));
        write_json(&path, r)?;
        out.push(path);
    }
    Ok(out)
}
