mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use steady_euler::fieldcore::io::{save_field, FieldMeta};
use steady_euler::fieldcore::{build_grid, ConvexDomain, Grid, PresetParams, ScalarField, sample_preset};
use steady_euler::rearrange::{
    distribution_function, holder_seminorm, holder_seminorm_points, rearrange_along,
    symmetric_increasing_rearrangement, MonotoneProfile, Monotonicity, Order,
};

fn params(kv: &[(&str, &str)]) -> PresetParams {
    kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn preset_fields(grid: &Arc<Grid>, dir: &std::path::Path) -> Vec<(String, ScalarField)> {
    let mut out: Vec<(String, ScalarField)> = [
        ("constant", params(&[("c", "2.5")])),
        ("radial-poly", BTreeMap::new()),
        ("appendix-A", BTreeMap::new()),
        ("two-bump", BTreeMap::new()),
        ("boundary-nonconstant", BTreeMap::new()),
        ("cusp-patch", BTreeMap::new()),
        ("cusp-patch", params(&[("shape", "disk"), ("invert", "true")])),
    ]
    .into_iter()
    .map(|(n, p)| (n.to_string(), sample_preset(n, &p, grid).unwrap()))
    .collect();
    let wavy = ScalarField::from_fn(grid.clone(), |p| (5.0 * p[0]).sin() * p[1]).unwrap();
    let stem = dir.join("wavy");
    let header = save_field(&stem, &wavy, &FieldMeta::named("wavy")).unwrap();
    let p = params(&[("path", header.to_str().unwrap())]);
    out.push(("custom-grid-file".into(), sample_preset("custom-grid-file", &p, grid).unwrap()));
    out
}

#[test]
fn rearranging_preserves_the_value_multiset_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let g = build_grid(ConvexDomain::unit_disk(), 1.0 / 48.0).unwrap();
    let fields = preset_fields(&g, dir.path());
    let keys = [
        ScalarField::from_fn(g.clone(), |p| p[0] * p[0] - 0.3 * p[1]).unwrap(),
        ScalarField::constant(g.clone(), 0.0).unwrap(),
        ScalarField::from_fn(g.clone(), |p| (7.0 * p[0] * p[1]).cos()).unwrap(),
    ];
    for (name, w) in &fields {
        for key in &keys {
            for dir in [Order::Increasing, Order::Decreasing] {
                let r = rearrange_along(w, key, dir).unwrap();
                assert_eq!(r.sorted_bits(), w.sorted_bits(), "{name}");
            }
        }
        if w.min() >= 0.0 {
            let s = symmetric_increasing_rearrangement(w).unwrap();
            assert!(s.same_distribution(w), "{name}");
        } else {
            assert!(symmetric_increasing_rearrangement(w).is_err());
        }
    }
}

#[test]
fn rearrangement_follows_the_key() {
    let g = build_grid(ConvexDomain::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), 1.0 / 20.0).unwrap();
    let w = ScalarField::from_fn(g.clone(), |p| (9.0 * p[0]).sin() + p[1]).unwrap();
    let key = ScalarField::from_fn(g.clone(), |p| (p[0] - 0.3).powi(2) + 2.0 * p[1]).unwrap();
    let r = rearrange_along(&w, &key, Order::Increasing).unwrap();
    let d = rearrange_along(&w, &key, Order::Decreasing).unwrap();
    for a in 0..g.len() {
        for b in 0..g.len() {
            if key.values()[a] < key.values()[b] {
                assert!(r.values()[a] <= r.values()[b]);
                assert!(d.values()[a] >= d.values()[b]);
            }
        }
    }
}

/// `sum omega psi` is largest for the increasing and smallest for the
/// decreasing arrangement, over every arrangement of the values.
#[test]
fn hardy_littlewood_by_exhaustion() {
    let grids = common::toy_grids(8);
    assert!(grids.len() >= 4);
    for g in grids {
        let n = g.len();
        let values: Vec<f64> = (0..n).map(|k| [1.0, 2.0, 2.0, 3.5, 0.5, 5.0, 1.0, 4.0][k]).collect();
        let w = common::field(&g, values.clone());
        let key = ScalarField::from_fn(g.clone(), |p| (2.0 * p[0]).sin() - p[1] * p[1]).unwrap();
        let pair = |v: &[f64]| v.iter().zip(key.values()).map(|(a, b)| a * b).sum::<f64>();
        let inc = pair(rearrange_along(&w, &key, Order::Increasing).unwrap().values());
        let dec = pair(rearrange_along(&w, &key, Order::Decreasing).unwrap().values());
        let perms = common::distinct_permutations(&values);
        let best = perms.iter().map(|p| pair(p)).fold(f64::NEG_INFINITY, f64::max);
        let worst = perms.iter().map(|p| pair(p)).fold(f64::INFINITY, f64::min);
        assert!((inc - best).abs() < 1e-12, "{n} nodes");
        assert!((dec - worst).abs() < 1e-12, "{n} nodes");
    }
}

#[test]
fn symmetric_rearrangement_of_radial_field_is_itself() {
    let g = build_grid(ConvexDomain::unit_disk(), 1.0 / 32.0).unwrap();
    let w = ScalarField::from_fn(g.clone(), |p| 1.0 + p[0] * p[0] + p[1] * p[1]).unwrap();
    let s = symmetric_increasing_rearrangement(&w).unwrap();
    // Ties on lattice circles are broken by index, values on them agree.
    assert!(s.sup_distance(&w).unwrap() < 1e-12);
}

#[test]
fn holder_seminorm_of_square_root() {
    let pts: Vec<(f64, f64)> = (0..=400).map(|k| {
        let s = k as f64 / 400.0;
        (s, s.sqrt())
    }).collect();
    let p = MonotoneProfile::new(pts, Monotonicity::Nondecreasing).unwrap();
    let v = holder_seminorm(&p, 0.5, 0.0, 1.0).unwrap();
    assert!((v - 1.0).abs() < 1e-12, "{v}");
    // A larger exponent sees the blow-up at 0.
    assert!(holder_seminorm(&p, 0.75, 0.0, 1.0).unwrap() > 2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distribution_function_counts_nodes(values in prop::collection::vec(-3i32..3, 1..60)) {
        let n = values.len();
        let g = Arc::new(Grid::new_coarse(ConvexDomain::rectangle(0.0, 0.0, (n + 1) as f64, 2.0).unwrap(), 1.0).unwrap());
        prop_assume!(g.len() == n);
        let w = common::field(&g, values.iter().map(|&v| v as f64 * 0.5).collect());
        let d = distribution_function(&w);
        for t in [-2.0, -0.5, 0.0, 0.25, 1.0, 5.0] {
            let count = w.values().iter().filter(|&&v| v <= t).count();
            prop_assert!((d.eval(t) - count as f64 * g.weight()).abs() < 1e-12);
        }
        prop_assert!((d.total_measure() - g.area()).abs() < 1e-9);
        let inv = d.left_inverse().unwrap();
        let bp = inv.breakpoints();
        prop_assert!(bp.windows(2).all(|w| w[1].1 >= w[0].1));
        prop_assert!((inv.min_value() - w.min()).abs() < 1e-15);
        prop_assert!((inv.max_value() - w.max()).abs() < 1e-15);
    }

    #[test]
    fn holder_seminorm_matches_brute_force(ys in prop::collection::vec(0.0f64..1.0, 2..40), beta in 0.1f64..1.0, inc in any::<bool>()) {
        let mut ys = ys;
        ys.sort_by(f64::total_cmp);
        if !inc {
            ys.reverse();
        }
        let pts: Vec<(f64, f64)> = ys.iter().enumerate().map(|(k, &y)| (k as f64 * 0.1 + (k * k) as f64 * 1e-3, y)).collect();
        let fast = holder_seminorm_points(&pts, beta, -1.0, 100.0).unwrap();
        let mut brute = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                brute = brute.max((pts[j].1 - pts[i].1).abs() / (pts[j].0 - pts[i].0).powf(beta));
            }
        }
        prop_assert!((fast - brute).abs() <= 1e-12 * brute.max(1.0));
    }
}
