use std::f64::consts::PI;

use tlvac::potential::{u_oscillatory, DipoleSpec, TLGeometry};
use tlvac::quadrature::*;

// Composite trapezoid on [0, 40] with 10⁷ panels; the integrand is smooth and
// the neglected tail is below e^{−80}.
fn trapezoid_oracle(f: impl Fn(f64) -> f64) -> f64 {
    let n = 10_000_000usize;
    let h = 40.0 / n as f64;
    let mut s = 0.5 * (f(0.0) + f(40.0));
    for i in 1..n {
        s += f(i as f64 * h);
    }
    s * h
}

#[test]
fn damped_against_trapezoid() {
    let f = |u: f64| u * u * (-2.0 * u).exp() / (1.0 + u * u).powi(2);
    let want = trapezoid_oracle(f);
    let r = integrate_damped(f, &QuadratureSpec::default());
    assert!(r.converged);
    assert!((r.value - want).abs() < 1e-9, "{} vs {want}", r.value);
}

#[test]
fn real_axis_two_level_matches_damped_form() {
    // Im ∫ α(k)² k² e^{2ikz} dk with α(k) = 1/(1 − k²), poles pushed below
    // the axis, against −∫ α(iu)² u² e^{−2uz} du; z = 0.5λ with λ = 2π.
    let d = DipoleSpec::two_level(1.0, 1.0, 1.0).unwrap();
    let g = TLGeometry::natural(1.0).unwrap();
    let z = 0.5 * 2.0 * PI;
    let damped = integrate_damped(
        |u| u * u * (-2.0 * u * z).exp() / (1.0 + u * u).powi(2),
        &QuadratureSpec::default(),
    );
    // U = −(1/2π) ∫ α(iu)² u² e^{−2uz} du for unit moments, energy and area
    let want = -damped.value / (2.0 * PI);
    let got = u_oscillatory(&d, &d, &g, z, &QuadratureSpec::default().with_rel_tol(1e-7)).unwrap();
    assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
}

#[test]
fn tighter_tolerance_never_loosens_error() {
    let f = |u: f64| (u.sin() + 1.5) * (-u).exp() / (1.0 + u);
    let mut last = f64::INFINITY;
    for tol in [1e-4, 1e-6, 1e-8, 1e-10, 1e-12] {
        let r = integrate_damped(f, &QuadratureSpec::default().with_rel_tol(tol));
        assert!(r.converged);
        assert!(r.est_error <= last);
        last = r.est_error;
    }
}
