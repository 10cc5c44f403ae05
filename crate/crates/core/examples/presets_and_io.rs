//! Sample every built-in preset on the unit disk, then round-trip one
//! through the on-disk format and check the payload comes back bit-exact.

use std::collections::BTreeMap;

use steady_euler::fieldcore::io::{load_field, save_field, FieldMeta};
use steady_euler::fieldcore::{build_grid, sample_preset, ConvexDomain};

fn main() -> steady_euler::Result<()> {
    let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / 64.0)?;
    println!("unit disk, h = 1/64: {} nodes, area {:.6}", grid.len(), grid.area());
    let names = ["constant", "radial-poly", "appendix-A", "two-bump", "boundary-nonconstant", "cusp-patch"];
    for name in names {
        let w = sample_preset(name, &BTreeMap::new(), &grid)?;
        println!("{name:<22} min {:>9.5}  max {:>9.5}  integral {:>9.5}", w.min(), w.max(), w.integrate());
    }

    let w = sample_preset("appendix-A", &BTreeMap::new(), &grid)?;
    let dir = std::env::temp_dir().join("steady-euler-presets-example");
    let header = save_field(dir.join("appendix"), &w, &FieldMeta::named("omega0"))?;
    let loaded = load_field(&header)?;
    let same = loaded.field.values().iter().zip(w.values()).all(|(a, b)| a.to_bits() == b.to_bits());
    println!("saved {} (sha256 {}...), reload bit-exact: {same}", header.display(), &loaded.header.sha256[..16]);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
