//! Analytic vorticity presets.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use super::domain::Point;
use super::field::ScalarField;
use super::grid::Grid;
use super::io;
use crate::error::{Error, Result};

pub type PresetParams = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchShape {
    Cusp,
    Disk,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Constant {
        value: f64,
    },
    /// `sum_k coeffs[k] * r^(2k)` about `center`.
    RadialPoly {
        coeffs: Vec<f64>,
        center: Point,
    },
    /// `1 + 2(x^2 + y^4)` inside `B_{inner}`, blended radially to a constant
    /// by `outer`.
    AppendixA {
        inner: f64,
        outer: f64,
    },
    /// Two compactly supported bumps of height `gap` on a constant `base`.
    TwoBump {
        base: f64,
        gap: f64,
        separation: f64,
        radius: f64,
    },
    /// Linear ramp in `x`; not constant on the boundary.
    BoundaryNonconstant {
        base: f64,
        slope: f64,
    },
    /// Indicator of a patch. The cusp patch is
    /// `{tip_x <= x <= tip_x + length, |y - tip_y| <= halfwidth * ((x - tip_x)/length)^exponent}`.
    Patch {
        shape: PatchShape,
        exponent: f64,
        tip: Point,
        length: f64,
        halfwidth: f64,
        center: Point,
        radius: f64,
        invert: bool,
    },
    CustomGridFile {
        path: PathBuf,
    },
}

pub const PRESET_NAMES: [&str; 7] = [
    "constant",
    "radial-poly",
    "appendix-A",
    "two-bump",
    "boundary-nonconstant",
    "cusp-patch",
    "custom-grid-file",
];

fn get_f64(params: &PresetParams, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::BadParams(format!("{key}={s}"))),
    }
}

fn get_list(params: &PresetParams, key: &str, default: &[f64]) -> Result<Vec<f64>> {
    match params.get(key) {
        None => Ok(default.to_vec()),
        Some(s) => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::BadParams(format!("{key}={s}")))
            })
            .collect(),
    }
}

fn get_point(params: &PresetParams, key: &str, default: Point) -> Result<Point> {
    let v = get_list(params, key, &default)?;
    match v.as_slice() {
        [x, y] => Ok([*x, *y]),
        _ => Err(Error::BadParams(format!("{key} needs two coordinates"))),
    }
}

fn check_keys(params: &PresetParams, allowed: &[&str]) -> Result<()> {
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::BadParams(format!("unexpected parameter `{k}`")));
        }
    }
    Ok(())
}

/// Quintic smoothstep on `[0, 1]`, clamped outside.
pub fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

fn bump(r2: f64) -> f64 {
    if r2 >= 1.0 {
        0.0
    } else {
        let s = 1.0 - r2;
        s * s * s
    }
}

impl Preset {
    pub fn parse(name: &str, params: &PresetParams) -> Result<Self> {
        let preset = match name {
            "constant" => {
                check_keys(params, &["c"])?;
                Preset::Constant {
                    value: get_f64(params, "c", 1.0)?,
                }
            }
            "radial-poly" => {
                check_keys(params, &["coeffs", "center"])?;
                let coeffs = get_list(params, "coeffs", &[2.0, -1.0])?;
                if coeffs.is_empty() {
                    return Err(Error::BadParams("coeffs must be nonempty".into()));
                }
                Preset::RadialPoly {
                    coeffs,
                    center: get_point(params, "center", [0.0, 0.0])?,
                }
            }
            "appendix-A" => {
                check_keys(params, &["inner", "outer"])?;
                let inner = get_f64(params, "inner", 0.75)?;
                let outer = get_f64(params, "outer", 0.875)?;
                if !(0.0 < inner && inner < outer && outer < 1.0) {
                    return Err(Error::BadParams(format!(
                        "need 0 < inner < outer < 1, got {inner}, {outer}"
                    )));
                }
                Preset::AppendixA { inner, outer }
            }
            "two-bump" => {
                check_keys(params, &["base", "gap", "separation", "radius"])?;
                let p = Preset::TwoBump {
                    base: get_f64(params, "base", 1.0)?,
                    gap: get_f64(params, "gap", 0.2)?,
                    separation: get_f64(params, "separation", 1.0)?,
                    radius: get_f64(params, "radius", 0.35)?,
                };
                if let Preset::TwoBump {
                    gap,
                    separation,
                    radius,
                    ..
                } = p
                {
                    if !(gap > 0.0 && radius > 0.0 && separation > 0.0) {
                        return Err(Error::BadParams("two-bump needs positive sizes".into()));
                    }
                }
                p
            }
            "boundary-nonconstant" => {
                check_keys(params, &["base", "slope"])?;
                let slope = get_f64(params, "slope", 0.5)?;
                if slope == 0.0 {
                    return Err(Error::BadParams("slope must be nonzero".into()));
                }
                Preset::BoundaryNonconstant {
                    base: get_f64(params, "base", 1.0)?,
                    slope,
                }
            }
            "cusp-patch" => {
                check_keys(
                    params,
                    &[
                        "shape", "exponent", "tip", "length", "halfwidth", "center", "radius",
                        "invert",
                    ],
                )?;
                let shape = match params.get("shape").map(String::as_str) {
                    None | Some("cusp") => PatchShape::Cusp,
                    Some("disk") => PatchShape::Disk,
                    Some(other) => return Err(Error::BadParams(format!("shape={other}"))),
                };
                let invert = match params.get("invert").map(String::as_str) {
                    None | Some("0") | Some("false") => false,
                    Some("1") | Some("true") => true,
                    Some(other) => return Err(Error::BadParams(format!("invert={other}"))),
                };
                let exponent = get_f64(params, "exponent", 1.5)?;
                let length = get_f64(params, "length", 1.0)?;
                let halfwidth = get_f64(params, "halfwidth", 0.4)?;
                let radius = get_f64(params, "radius", 0.5)?;
                if exponent <= 0.0 || length < 0.0 || halfwidth < 0.0 || radius < 0.0 {
                    return Err(Error::BadParams("patch sizes must be nonnegative".into()));
                }
                Preset::Patch {
                    shape,
                    exponent,
                    tip: get_point(params, "tip", [-0.6, 0.0])?,
                    length,
                    halfwidth,
                    center: get_point(params, "center", [0.0, 0.0])?,
                    radius,
                    invert,
                }
            }
            "custom-grid-file" => {
                check_keys(params, &["path"])?;
                let path = params
                    .get("path")
                    .ok_or_else(|| Error::BadParams("custom-grid-file needs path=".into()))?;
                Preset::CustomGridFile {
                    path: PathBuf::from(path),
                }
            }
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        Ok(preset)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Constant { .. } => "constant",
            Preset::RadialPoly { .. } => "radial-poly",
            Preset::AppendixA { .. } => "appendix-A",
            Preset::TwoBump { .. } => "two-bump",
            Preset::BoundaryNonconstant { .. } => "boundary-nonconstant",
            Preset::Patch { .. } => "cusp-patch",
            Preset::CustomGridFile { .. } => "custom-grid-file",
        }
    }

    /// Hölder exponent of the preset, supplied as metadata. Patches are
    /// discontinuous; file fields carry no claim.
    pub fn holder_exponent(&self) -> Option<f64> {
        match self {
            Preset::Patch { .. } | Preset::CustomGridFile { .. } => None,
            _ => Some(1.0),
        }
    }

    /// Constant of the appendix-A blend: the polynomial's maximum over
    /// `B_outer` plus 0.1, so the blend adds no critical points.
    pub fn appendix_cap(outer: f64) -> f64 {
        1.0 + 2.0 * outer * outer + 0.1
    }

    /// Closed-form value at `p`; `None` for file-backed presets.
    pub fn evaluate(&self, p: Point) -> Option<f64> {
        let [x, y] = p;
        let v = match self {
            Preset::Constant { value } => *value,
            Preset::RadialPoly { coeffs, center } => {
                let r2 = (x - center[0]).powi(2) + (y - center[1]).powi(2);
                coeffs.iter().rev().fold(0.0, |acc, c| acc * r2 + c)
            }
            Preset::AppendixA { inner, outer } => {
                let poly = 1.0 + 2.0 * (x * x + y.powi(4));
                let chi = smoothstep((x.hypot(y) - inner) / (outer - inner));
                (1.0 - chi) * poly + chi * Self::appendix_cap(*outer)
            }
            Preset::TwoBump {
                base,
                gap,
                separation,
                radius,
            } => {
                let c = 0.5 * separation;
                let r2a = ((x - c).powi(2) + y * y) / (radius * radius);
                let r2b = ((x + c).powi(2) + y * y) / (radius * radius);
                base + gap * (bump(r2a) + bump(r2b))
            }
            Preset::BoundaryNonconstant { base, slope } => base + slope * (x + 1.0),
            Preset::Patch {
                shape,
                exponent,
                tip,
                length,
                halfwidth,
                center,
                radius,
                invert,
            } => {
                let inside = match shape {
                    PatchShape::Cusp => {
                        let s = x - tip[0];
                        *length > 0.0
                            && (0.0..=*length).contains(&s)
                            && (y - tip[1]).abs() <= halfwidth * (s / length).powf(*exponent)
                    }
                    PatchShape::Disk => (x - center[0]).hypot(y - center[1]) <= *radius,
                };
                if inside != *invert {
                    1.0
                } else {
                    0.0
                }
            }
            Preset::CustomGridFile { .. } => return None,
        };
        Some(v)
    }

    pub fn sample(&self, grid: &Arc<Grid>) -> Result<ScalarField> {
        match self {
            Preset::CustomGridFile { path } => {
                let loaded = io::load_field(path)?;
                if !loaded.field.grid().same_as(grid) {
                    return Err(Error::GridMismatch);
                }
                ScalarField::new(grid.clone(), loaded.field.into_values())
            }
            Preset::Patch { .. } => {
                let field = ScalarField::from_fn(grid.clone(), |p| self.evaluate(p).unwrap())?;
                let ones = field.values().iter().filter(|&&v| v == 1.0).count();
                if ones == 0 || ones == field.len() {
                    return Err(Error::DegenerateInput("patch covers no node or every node".into()));
                }
                Ok(field)
            }
            _ => ScalarField::from_fn(grid.clone(), |p| self.evaluate(p).unwrap()),
        }
    }
}

/// Samples the named preset on `grid`.
pub fn sample_preset(name: &str, params: &PresetParams, grid: &Arc<Grid>) -> Result<ScalarField> {
    Preset::parse(name, params)?.sample(grid)
}
