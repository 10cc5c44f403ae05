//! Field files and two-column CSV.
//!
//! A field is stored as a sidecar pair: `<stem>.json` (header) and
//! `<stem>.f64` (payload). The payload holds one little-endian `f64` per
//! bounding-box node in row-major order, with quiet NaN at non-interior
//! nodes. The header carries the payload's SHA-256.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::field::ScalarField;
use super::grid::{Grid, GridGeometry};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub schema_version: u32,
    /// What the field is (`psi`, `omega`, ...).
    pub name: String,
    pub grid: GridGeometry,
    pub preset: Option<String>,
    pub params: BTreeMap<String, String>,
    pub payload: String,
    pub sha256: String,
}

/// A field together with its header metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedField {
    pub header: FieldHeader,
    pub field: ScalarField,
}

/// Optional provenance written into the header.
#[derive(Debug, Clone, Default)]
pub struct FieldMeta {
    pub name: String,
    pub preset: Option<String>,
    pub params: BTreeMap<String, String>,
}

impl FieldMeta {
    pub fn named(name: impl Into<String>) -> Self {
        FieldMeta {
            name: name.into(),
            ..Default::default()
        }
    }
}

/// Full bounding-box payload bytes for `field`.
pub fn payload_bytes(field: &ScalarField) -> Vec<u8> {
    let grid = field.grid();
    let (cols, rows) = grid.shape();
    let mut full = vec![f64::NAN; cols * rows];
    for (node, v) in grid.nodes().iter().zip(field.values()) {
        full[node.j * cols + node.i] = *v;
    }
    let mut bytes = Vec::with_capacity(full.len() * 8);
    for v in full {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn header_path(stem: &Path) -> PathBuf {
    stem.with_extension("json")
}

fn payload_path(stem: &Path) -> PathBuf {
    stem.with_extension("f64")
}

/// Writes `<stem>.json` and `<stem>.f64`; returns the header path.
pub fn save_field(stem: impl AsRef<Path>, field: &ScalarField, meta: &FieldMeta) -> Result<PathBuf> {
    let stem = stem.as_ref();
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let bytes = payload_bytes(field);
    let ppath = payload_path(stem);
    let header = FieldHeader {
        schema_version: SCHEMA_VERSION,
        name: meta.name.clone(),
        grid: field.grid().geometry().clone(),
        preset: meta.preset.clone(),
        params: meta.params.clone(),
        payload: ppath
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        sha256: sha256_hex(&bytes),
    };
    fs::write(&ppath, &bytes).map_err(|e| Error::io(&ppath, e))?;
    let hpath = header_path(stem);
    write_json(&hpath, &header)?;
    Ok(hpath)
}

/// Loads a field from its header path (or stem).
pub fn load_field(path: impl AsRef<Path>) -> Result<LoadedField> {
    let hpath = header_path(path.as_ref());
    let text = fs::read_to_string(&hpath).map_err(|e| Error::io(&hpath, e))?;
    let raw: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::format(&hpath, e.to_string()))?;
    let found = raw
        .get("schema_version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::format(&hpath, "missing schema_version"))? as u32;
    if found != SCHEMA_VERSION {
        return Err(Error::VersionMismatch {
            found,
            expected: SCHEMA_VERSION,
        });
    }
    let header: FieldHeader =
        serde_json::from_value(raw).map_err(|e| Error::format(&hpath, e.to_string()))?;
    let ppath = hpath.with_file_name(&header.payload);
    let bytes = fs::read(&ppath).map_err(|e| Error::io(&ppath, e))?;
    if sha256_hex(&bytes) != header.sha256 {
        return Err(Error::ChecksumMismatch(ppath));
    }
    let grid = Arc::new(Grid::from_geometry(header.grid.clone())?);
    let (cols, rows) = grid.shape();
    if bytes.len() != cols * rows * 8 {
        return Err(Error::format(&ppath, "payload length does not match grid"));
    }
    let full: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let mut values = Vec::with_capacity(grid.len());
    for j in 0..rows {
        for i in 0..cols {
            let v = full[j * cols + i];
            match grid.interior_index(i, j) {
                Some(_) => values.push(v),
                None if v.is_nan() => {}
                None => return Err(Error::format(&ppath, "value at non-interior node")),
            }
        }
    }
    let field = ScalarField::new(grid, values)?;
    Ok(LoadedField { header, field })
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Error::format(path, e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))
}

/// Writes `(abscissa, value)` rows under a one-line header. Floats use the
/// shortest representation that round-trips.
pub fn write_pairs_csv(
    path: impl AsRef<Path>,
    columns: [&str; 2],
    rows: &[(f64, f64)],
) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(columns).map_err(|e| csv_error(path, e))?;
    for (a, b) in rows {
        w.write_record([a.to_string(), b.to_string()])
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a two-column CSV written by [`write_pairs_csv`]; returns the header
/// and the rows.
pub fn read_pairs_csv(path: impl AsRef<Path>) -> Result<([String; 2], Vec<(f64, f64)>)> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let head = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if head.len() != 2 {
        return Err(Error::format(path, "expected two columns"));
    }
    let columns = [head[0].to_string(), head[1].to_string()];
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        if rec.len() != 2 {
            return Err(Error::format(path, "expected two columns"));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::format(path, format!("bad number `{s}`")))
        };
        rows.push((parse(&rec[0])?, parse(&rec[1])?));
    }
    Ok((columns, rows))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::format(path, e.to_string())
    }
}

/// Writes a binary PGM heatmap of `field` (min black, max white; exterior
/// nodes black). Rows are flipped so that `y` points up.
pub fn write_pgm(path: impl AsRef<Path>, field: &ScalarField) -> Result<()> {
    let path = path.as_ref();
    let grid = field.grid();
    let (cols, rows) = grid.shape();
    let (lo, hi) = (field.min(), field.max());
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut pixels = vec![0u8; cols * rows];
    for (node, v) in grid.nodes().iter().zip(field.values()) {
        let level = 1.0 + 254.0 * (v - lo) / span;
        pixels[(rows - 1 - node.j) * cols + node.i] = level.round() as u8;
    }
    let mut bytes = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    bytes.extend_from_slice(&pixels);
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::ConvexDomain;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let g = Arc::new(Grid::new(ConvexDomain::unit_disk(), 1.0 / 16.0).unwrap());
        let f = ScalarField::from_fn(g, |p| (p[0] * 3.1).sin() + p[1] / 7.0).unwrap();
        let stem = dir.path().join("psi");
        save_field(&stem, &f, &FieldMeta::named("psi")).unwrap();
        let back = load_field(&stem).unwrap();
        assert_eq!(back.field, f);
        assert_eq!(back.field.integrate().to_bits(), f.integrate().to_bits());

        let ppath = dir.path().join("psi.f64");
        let mut bytes = fs::read(&ppath).unwrap();
        let k = bytes.len() / 2;
        bytes[k] ^= 1;
        fs::write(&ppath, bytes).unwrap();
        assert!(matches!(load_field(&stem), Err(Error::ChecksumMismatch(_))));
    }

    #[test]
    fn version_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let g = Arc::new(Grid::new(ConvexDomain::unit_disk(), 1.0 / 16.0).unwrap());
        let stem = dir.path().join("w");
        save_field(&stem, &ScalarField::zeros(g), &FieldMeta::named("w")).unwrap();
        let hpath = dir.path().join("w.json");
        let text = fs::read_to_string(&hpath).unwrap();
        fs::write(&hpath, text.replace("\"schema_version\": 1", "\"schema_version\": 7")).unwrap();
        assert!(matches!(
            load_field(&stem),
            Err(Error::VersionMismatch { found: 7, .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let rows = vec![(0.1, 1.0 / 3.0), (f64::MIN_POSITIVE, -2.5e300)];
        write_pairs_csv(&p, ["s", "f"], &rows).unwrap();
        let (cols, back) = read_pairs_csv(&p).unwrap();
        assert_eq!(cols, ["s".to_string(), "f".to_string()]);
        assert_eq!(back, rows);
    }
}
