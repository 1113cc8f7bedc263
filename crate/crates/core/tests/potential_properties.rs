use std::f64::consts::PI;

use proptest::prelude::*;
use tlvac::potential::*;
use tlvac::quadrature::QuadratureSpec;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn two_transition(e1: f64, e2: f64) -> DipoleSpec {
    DipoleSpec::new(vec![
        Transition::natural(1.0, e1).unwrap(),
        Transition::natural(0.6, e2).unwrap(),
    ])
    .unwrap()
}

#[test]
fn f_two_level_decreasing_on_log_grid() {
    let grid = log_grid(1e-4, 1e2, 100);
    let vals: Vec<f64> = grid.iter().map(|&x| f_two_level(x).unwrap()).collect();
    assert!(vals.iter().all(|&v| v > 0.0));
    for w in vals.windows(2) {
        assert!(w[1] < w[0]);
    }
}

#[test]
fn asymptotic_matching() {
    for xi in log_grid(1e-8, 1e-3, 20) {
        assert!(rel(f_asymptotic_short(xi).unwrap(), f_two_level(xi).unwrap()) < 0.01);
    }
    for xi in log_grid(10.0, 1e4, 20) {
        assert!(rel(f_asymptotic_long(xi).unwrap(), f_two_level(xi).unwrap()) < 0.01);
    }
}

const B_SET: [f64; 5] = [
    0.5,
    1.0 - DEGENERATE_DELTA,
    1.0 + DEGENERATE_DELTA,
    2.0,
    5.0,
];

#[test]
fn pair_long_range_universal() {
    for xi in [10.0_f64, 30.0, 100.0] {
        let want = 1.0 / (8.0 * PI.powi(3));
        for b in B_SET {
            let v = xi.powi(3) * pair_kernel(xi, b).unwrap() * b;
            assert!(rel(v, want) < 0.02, "xi = {xi}, b = {b}: {v}");
        }
    }
}

#[test]
fn pair_short_limit() {
    for b in B_SET {
        let v = pair_kernel(1e-9, b).unwrap();
        assert!((v - 2.0 * b * PI / (1.0 + b)).abs() < 1e-3, "b = {b}: {v}");
    }
}

#[test]
fn wick_matches_multilevel_on_grid() {
    let g = TLGeometry::natural(1.0).unwrap();
    let spec = QuadratureSpec::default();
    for ratio in log_grid(0.1, 10.0, 10) {
        let d = two_transition(2.0 * PI, 2.0 * PI * ratio);
        for z in log_grid(1e-3, 20.0, 10) {
            let m = u_multilevel(&d, &d, &g, z).unwrap();
            let w = u_wick(&d, &d, &g, z, &spec).unwrap();
            assert!(m < 0.0 && w < 0.0);
            assert!(rel(w, m) <= 1e-6, "ratio {ratio}, z {z}: {w} vs {m}");
        }
    }
}

#[test]
fn oscillatory_matches_wick_on_grid() {
    let d = DipoleSpec::two_level(1.0, 2.0 * PI, 1.0).unwrap();
    let g = TLGeometry::natural(1.0).unwrap();
    let spec = QuadratureSpec::default().with_rel_tol(1e-7);
    for z in log_grid(0.1, 5.0, 10) {
        let o = u_oscillatory(&d, &d, &g, z, &spec).unwrap();
        let w = u_wick(&d, &d, &g, z, &spec).unwrap();
        assert!(o < 0.0);
        assert!(rel(o, w) <= 1e-6, "z = {z}: {o} vs {w}");
    }
}

#[test]
fn oscillatory_handles_distinct_poles() {
    let d1 = two_transition(2.0 * PI, 3.0 * PI);
    let d2 = DipoleSpec::two_level(0.8, 5.0 * PI, 1.0).unwrap();
    let g = TLGeometry::new(0.5, 2.0, 1.3, 1.0).unwrap();
    let spec = QuadratureSpec::default().with_rel_tol(1e-7);
    for z in [0.2, 1.0, 3.0] {
        let o = u_oscillatory(&d1, &d2, &g, z, &spec).unwrap();
        let m = u_multilevel(&d1, &d2, &g, z).unwrap();
        assert!(rel(o, m) <= 1e-6, "z = {z}: {o} vs {m}");
    }
}

#[test]
fn enhancement_slope_independent_of_area() {
    let d = DipoleSpec::two_level(1.0, 2.0 * PI, 1.0).unwrap();
    let slope = |a: f64| {
        let g = TLGeometry::natural(a * a).unwrap();
        let (z1, z2) = (20.0, 40.0);
        let r1 = enhancement_ratio(&d, &g, z1, Regime::Long).unwrap();
        let r2 = enhancement_ratio(&d, &g, z2, Regime::Long).unwrap();
        ((r2 / r1).ln() / (z2 / z1).ln(), r1)
    };
    let (s_small, r_small) = slope(1e-4);
    let (s_big, r_big) = slope(3.0);
    assert!((s_small - s_big).abs() < 1e-12);
    assert!(r_big < r_small);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energies_attractive(
        z in 1e-3f64..30.0,
        e1 in 0.5f64..20.0,
        e2 in 0.5f64..20.0,
        d1 in 0.01f64..10.0,
        d2 in 0.01f64..10.0,
        area in 0.01f64..10.0,
    ) {
        let a = DipoleSpec::two_level(d1, e1, 1.0).unwrap();
        let b = DipoleSpec::two_level(d2, e2, 1.0).unwrap();
        let g = TLGeometry::natural(area).unwrap();
        prop_assert!(u_multilevel(&a, &b, &g, z).unwrap() < 0.0);
        prop_assert!(u_wick(&a, &b, &g, z, &QuadratureSpec::default()).unwrap() < 0.0);
    }

    #[test]
    fn f_two_level_positive(xi in 1e-8f64..1e4) {
        prop_assert!(f_two_level(xi).unwrap() > 0.0);
    }

    #[test]
    fn degenerate_kernel_continuous(xi in 1e-4f64..50.0, t in -1.0f64..1.0) {
        let b = 1.0 + t * DEGENERATE_DELTA * 0.999;
        let v = pair_kernel(xi, b).unwrap();
        let edge = pair_kernel(xi, 1.0 + DEGENERATE_DELTA).unwrap();
        prop_assert!(rel(v, edge) < 1e-3);
    }

    #[test]
    fn multilevel_pair_symmetric(z in 1e-3f64..10.0, e1 in 0.5f64..20.0, e2 in 0.5f64..20.0) {
        let a = DipoleSpec::two_level(1.0, e1, 1.0).unwrap();
        let b = DipoleSpec::two_level(2.0, e2, 1.0).unwrap();
        let g = TLGeometry::natural(1.0).unwrap();
        let ab = u_multilevel(&a, &b, &g, z).unwrap();
        let ba = u_multilevel(&b, &a, &g, z).unwrap();
        prop_assert!(rel(ab, ba) < 1e-9);
    }
}
