mod common;

use proptest::prelude::*;
use steady_euler::fieldcore::io::{load_field, save_field, FieldMeta};
use steady_euler::fieldcore::{build_grid, ConvexDomain, Grid, ScalarField};
use steady_euler::Error;

#[test]
fn save_and_load_round_trip_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let g = build_grid(ConvexDomain::regular_polygon(7, [0.2, -0.1], 0.8, 0.1).unwrap(), 1.0 / 30.0).unwrap();
    let w = ScalarField::from_fn(g.clone(), |p| (p[0] * 13.0).sin() / (1.0 + p[1] * p[1])).unwrap();
    let mut meta = FieldMeta::named("omega");
    meta.preset = Some("custom".into());
    let header = save_field(dir.path().join("w"), &w, &meta).unwrap();
    let loaded = load_field(&header).unwrap();
    assert_eq!(loaded.field.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
               w.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    assert!(loaded.field.grid().same_as(&g));
    assert_eq!(loaded.header.preset.as_deref(), Some("custom"));
    // Saving twice gives the same bytes.
    let a = std::fs::read(dir.path().join("w.f64")).unwrap();
    save_field(dir.path().join("w"), &w, &meta).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("w.f64")).unwrap());
}

#[test]
fn corrupted_payload_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let g = build_grid(ConvexDomain::unit_disk(), 1.0 / 16.0).unwrap();
    let w = ScalarField::constant(g, 1.0).unwrap();
    let header = save_field(dir.path().join("w"), &w, &FieldMeta::named("w")).unwrap();
    let payload = dir.path().join("w.f64");
    let mut bytes = std::fs::read(&payload).unwrap();
    let k = bytes.len() / 2;
    bytes[k] ^= 1;
    std::fs::write(&payload, bytes).unwrap();
    assert!(matches!(load_field(&header), Err(Error::ChecksumMismatch(_))));
    let text = std::fs::read_to_string(&header).unwrap().replace("\"schema_version\": 1", "\"schema_version\": 99");
    std::fs::write(&header, text).unwrap();
    assert!(matches!(load_field(&header), Err(Error::VersionMismatch { .. })));
}

#[test]
fn grids_reject_degenerate_input() {
    assert!(ConvexDomain::disk([0.0, 0.0], 0.0).is_err());
    assert!(ConvexDomain::polygon(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err());
    assert!(build_grid(ConvexDomain::unit_disk(), 0.9).is_err());
    let g = build_grid(ConvexDomain::unit_disk(), 1.0 / 8.0).unwrap();
    assert!(ScalarField::new(g.clone(), vec![1.0; g.len() + 1]).is_err());
    assert!(ScalarField::new(g.clone(), vec![f64::NAN; g.len()]).is_err());
}

#[test]
fn node_weights_carry_the_domain_measure() {
    for d in [
        ConvexDomain::unit_disk(),
        ConvexDomain::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(),
        ConvexDomain::regular_polygon(5, [0.0, 0.0], 1.0, 0.3).unwrap(),
    ] {
        let g = build_grid(d.clone(), 1.0 / 64.0).unwrap();
        assert!((g.weight() * g.len() as f64 - d.area()).abs() < 1e-12);
        // Uniform weights stay close to the cell area.
        assert!((g.weight() / (g.h() * g.h()) - 1.0).abs() < 0.1);
        assert!(g.positions().all(|p| d.contains(p)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polygon_inradius_matches_clipping(n in 3usize..9, phase in 0.0f64..1.0, sx in 0.3f64..1.5) {
        let verts: Vec<[f64; 2]> = (0..n)
            .map(|k| {
                let a = phase + k as f64 * std::f64::consts::TAU / n as f64;
                [sx * a.cos(), a.sin() * (1.0 + 0.2 * (3.0 * a).sin())]
            })
            .collect();
        let Ok(d) = ConvexDomain::polygon(verts) else { return Ok(()) };
        let ConvexDomain::Polygon { vertices } = &d else { unreachable!() };
        let oracle = common::clip_inradius(vertices);
        prop_assert!((d.inradius() - oracle).abs() < 1e-9, "{} vs {oracle}", d.inradius());
    }

    #[test]
    fn interior_nodes_are_lattice_points_inside(h in 0.03f64..0.2, cx in -0.3f64..0.3) {
        let d = ConvexDomain::disk([cx, 0.1], 0.9).unwrap();
        let g = Grid::new_coarse(d.clone(), h).unwrap();
        for node in g.nodes() {
            prop_assert!(d.contains(node.position));
            prop_assert_eq!(g.interior_index(node.i, node.j).map(|k| g.node(k).position), Some(node.position));
        }
    }
}
