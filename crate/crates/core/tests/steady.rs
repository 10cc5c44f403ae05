mod common;

use std::sync::Arc;

use proptest::prelude::*;
use steady_euler::fieldcore::io::FieldMeta;
use steady_euler::fieldcore::{build_grid, ConvexDomain, Grid, ScalarField};
use steady_euler::poisson::{first_eigenvalue, kinetic_energy, BoundaryValues};
use steady_euler::steady::{
    check_arnold, depth_levels, extract_profile, extremize_energy, fixed_point_residual,
    level_set_convexity_check, stagnation_set, write_run_dir, ArnoldVerdict, Extremum,
    StagnationOptions, StagnationShape, SteadyOptions,
};

fn disk(h: f64) -> Arc<Grid> {
    build_grid(ConvexDomain::unit_disk(), h).unwrap()
}

#[test]
fn radial_minimizer_matches_closed_form() {
    let g = disk(1.0 / 64.0);
    let w0 = ScalarField::from_fn(g.clone(), |p| 2.0 - p[0] * p[0] - p[1] * p[1]).unwrap();
    let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
    assert!(st.converged);
    let exact = ScalarField::from_fn(g.clone(), |p| 1.0 + p[0] * p[0] + p[1] * p[1]).unwrap();
    let l1 = st.omega.l1_distance(&exact).unwrap();
    assert!(l1 <= 3.0 * g.h() * g.area(), "{l1}");
    let err = g
        .positions()
        .zip(st.psi.values())
        .map(|(p, v)| (v - common::radial_psi(p[0].hypot(p[1]))).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-3, "{err}");
    // f maps psi(r) to 1 + r^2.
    for r in [0.2, 0.5, 0.8] {
        let f = st.profile.eval(common::radial_psi(r));
        assert!((f - (1.0 + r * r)).abs() < 0.02, "{r}: {f}");
    }
    assert!(fixed_point_residual(&st).unwrap() < 2e-3);
    assert!(st.energy() <= kinetic_energy(&w0).unwrap());
}

/// On grids small enough to enumerate, the minimizer and maximizer reach
/// the extreme energies over every arrangement of the values.
#[test]
fn toy_extremizers_are_global() {
    let grids = common::toy_grids(8);
    for g in grids {
        let n = g.len();
        let values: Vec<f64> = (0..n).map(|k| 1.0 + (k as f64 * 0.37).sin().abs() * 3.0 + 0.1 * k as f64).collect();
        let w0 = common::field(&g, values.clone());
        let energies: Vec<f64> = common::distinct_permutations(&values)
            .into_iter()
            .map(|v| kinetic_energy(&common::field(&g, v)).unwrap())
            .collect();
        let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
        let max = extremize_energy(&w0, Extremum::Max, &SteadyOptions::default()).unwrap();
        assert!((min.energy() - lo) <= 1e-9 * lo, "{n} nodes: {} vs {lo}", min.energy());
        assert!((hi - max.energy()) <= 1e-9 * hi, "{n} nodes: {} vs {hi}", max.energy());
        assert!(min.omega.same_distribution(&w0) && max.omega.same_distribution(&w0));
    }
}

#[test]
fn maximizer_concentrates_vorticity_in_the_centre() {
    let g = disk(1.0 / 32.0);
    let w0 = ScalarField::from_fn(g.clone(), |p| 1.0 + p[0].max(0.0)).unwrap();
    let st = extremize_energy(&w0, Extremum::Max, &SteadyOptions::default()).unwrap();
    let h = &st.energy_history;
    assert!(h.windows(2).all(|w| w[1] >= w[0] - 1e-12 * w[0]));
    let centre = st.omega.values()[st.psi.argmin()];
    assert_eq!(centre, st.omega.max());
}

#[test]
fn convexity_and_stagnation_on_a_pentagon() {
    let d = ConvexDomain::regular_polygon(5, [0.0, 0.0], 1.0, std::f64::consts::FRAC_PI_2).unwrap();
    let g = build_grid(d, 1.0 / 48.0).unwrap();
    let w0 = ScalarField::from_fn(g.clone(), |p| 2.0 - p[0] * p[0] - 0.5 * p[1]).unwrap();
    let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
    let rep = level_set_convexity_check(&st.psi, &depth_levels(&st.psi, &[0.2, 0.4, 0.6, 0.8])).unwrap();
    assert!(rep.nested);
    assert!(rep.max_defect < 0.06, "{}", rep.max_defect);
    let s = stagnation_set(&st.psi, &StagnationOptions::default()).unwrap();
    assert_eq!(s.classification, StagnationShape::Point);
    assert!(s.gradient_floor > 0.0);
}

#[test]
fn saddle_has_nonconvex_sublevel_sets() {
    let g = build_grid(ConvexDomain::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap(), 1.0 / 32.0).unwrap();
    let psi = ScalarField::from_fn(g.clone(), |p| p[0] * p[0] - p[1] * p[1] - 1.5).unwrap();
    let rep = level_set_convexity_check(&psi, &[-1.4, -1.0]).unwrap();
    assert!(rep.max_defect > 0.1, "{}", rep.max_defect);
    assert!(level_set_convexity_check(&psi, &[0.5]).is_err());
}

#[test]
fn flat_valley_is_a_segment() {
    let g = disk(1.0 / 64.0);
    let v = ScalarField::from_fn(g.clone(), |p| (p[0].abs() - 0.5).max(0.0).powi(2) + p[1] * p[1] - 1.0).unwrap();
    let opts = StagnationOptions {
        boundary: BoundaryValues::Unknown,
        ..StagnationOptions::default()
    };
    let s = stagnation_set(&v, &opts).unwrap();
    assert_eq!(s.classification, StagnationShape::Segment);
    let len = (s.location[1][0] - s.location[0][0]).hypot(s.location[1][1] - s.location[0][1]);
    assert!((len - 1.0).abs() < 4.0 * g.h(), "{len}");
    // A single well is a point even when elongated.
    let w = ScalarField::from_fn(g.clone(), |p| p[0] * p[0] + 9.0 * p[1] * p[1] - 1.0).unwrap();
    assert_eq!(stagnation_set(&w, &opts).unwrap().classification, StagnationShape::Point);
}

#[test]
fn arnold_and_sign() {
    let g = disk(1.0 / 32.0);
    let w0 = ScalarField::from_fn(g.clone(), |p| 2.0 - p[0] * p[0] - p[1] * p[1]).unwrap();
    let eig = first_eigenvalue(&g, 1e-8).unwrap();
    let min = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
    let rep = check_arnold(&min, &eig).unwrap();
    assert_eq!(rep.verdict, ArnoldVerdict::WeakType1);
    assert!(rep.single_signed);
    let neg = w0.scale(-1.0).unwrap();
    let st = extremize_energy(&neg, Extremum::Min, &SteadyOptions::default()).unwrap();
    assert!(st.omega.max() <= 0.0);
    assert!(st.omega.same_distribution(&neg));
}

#[test]
fn extracted_profile_of_radial_pair() {
    let g = disk(1.0 / 64.0);
    let w = ScalarField::from_fn(g.clone(), |p| 1.0 + p[0] * p[0] + p[1] * p[1]).unwrap();
    let psi = ScalarField::from_fn(g.clone(), |p| common::radial_psi(p[0].hypot(p[1]))).unwrap();
    let f = extract_profile(&psi, &w, Extremum::Min).unwrap();
    for r in [0.1, 0.3, 0.6, 0.9] {
        assert!((f.eval(common::radial_psi(r)) - (1.0 + r * r)).abs() < 0.01);
    }
}

#[test]
fn constant_class_and_run_directory() {
    let g = disk(1.0 / 32.0);
    let w0 = ScalarField::constant(g.clone(), 3.0).unwrap();
    let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
    assert!(st.converged);
    assert_eq!(st.omega, w0);
    let dir = tempfile::tempdir().unwrap();
    let report = write_run_dir(dir.path(), &st, &FieldMeta::named("run"), false).unwrap();
    let text = std::fs::read_to_string(report).unwrap();
    assert!(text.contains("\"converged\": true"));
}

#[test]
fn bad_tolerance_and_mixed_sign_are_rejected() {
    let g = disk(1.0 / 16.0);
    let w = ScalarField::from_fn(g.clone(), |p| p[0]).unwrap();
    assert!(extremize_energy(&w, Extremum::Min, &SteadyOptions::default()).is_err());
    let c = ScalarField::constant(g, 1.0).unwrap();
    let bad = SteadyOptions { tol: 0.0, ..SteadyOptions::default() };
    assert!(extremize_energy(&c, Extremum::Min, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn minimizer_stays_in_class_and_lowers_energy(a in 0.0f64..2.0, b in 0.0f64..2.0, k in 1.0f64..5.0) {
        let g = build_grid(ConvexDomain::rectangle(0.0, 0.0, 1.0, 0.7).unwrap(), 1.0 / 20.0).unwrap();
        let w0 = ScalarField::from_fn(g.clone(), |p| 1.0 + a * (k * p[0]).sin().abs() + b * p[1]).unwrap();
        let st = extremize_energy(&w0, Extremum::Min, &SteadyOptions::default()).unwrap();
        prop_assert!(st.omega.same_distribution(&w0));
        prop_assert!(st.energy() <= kinetic_energy(&w0).unwrap() * (1.0 + 1e-12));
        let mx = extremize_energy(&w0, Extremum::Max, &SteadyOptions::default()).unwrap();
        prop_assert!(mx.energy() >= st.energy());
    }
}
