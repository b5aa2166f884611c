use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyplab::moebius::{disc_automorphism, moebius_apply, rotation};
use hyplab::quadrature::{integrate_adaptive, periodic_mean, Quadrature};
use hyplab::series::{series_area, series_eval_deriv};
use hyplab::{c, ComplexPoint, HypError, MoebiusMap, PowerSeriesFunction};
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = ComplexPoint> {
    (0.0..0.95f64, 0.0..2.0 * PI).prop_map(|(r, t)| ComplexPoint::from_polar(r, t))
}

#[test]
fn moebius_examples() {
    let id = MoebiusMap::identity();
    assert_eq!(moebius_apply(&id, c(0.3, 0.1)).unwrap(), c(0.3, 0.1));
    let t0 = disc_automorphism(c(0.0, 0.0)).unwrap();
    assert_abs_diff_eq!((moebius_apply(&t0, c(0.5, 0.0)).unwrap() - c(0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);
    let m = MoebiusMap::new(c(1.0, 0.0), c(-0.5, 0.0), c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
    assert_abs_diff_eq!(moebius_apply(&m, c(0.5, 0.0)).unwrap().norm(), 0.0, epsilon = 1e-15);
}

#[test]
fn automorphism_examples() {
    let t = disc_automorphism(c(0.5, 0.0)).unwrap();
    assert_abs_diff_eq!((t.apply(c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!((t.derivative(c(0.5, 0.0)).unwrap() - c(4.0 / 3.0, 0.0)).norm(), 0.0, epsilon = 1e-14);
}

#[test]
fn pole_and_outside_inputs_are_errors() {
    let t = disc_automorphism(c(0.5, 0.0)).unwrap();
    assert!(matches!(t.apply(c(2.0, 0.0)), Err(HypError::Pole { .. })));
    assert!(disc_automorphism(c(1.0, 0.0)).is_err());
    let f = PowerSeriesFunction::identity();
    assert!(series_eval_deriv(&f, c(1.0, 0.0)).is_err());
}

#[test]
fn series_examples() {
    let (v, d) = series_eval_deriv(&PowerSeriesFunction::identity(), c(0.4, 0.0)).unwrap();
    assert_eq!((v, d), (c(0.4, 0.0), c(1.0, 0.0)));
    let sq = PowerSeriesFunction::from_real(&[0.0, 0.0, 1.0]).unwrap();
    let (v, d) = series_eval_deriv(&sq, c(0.5, 0.0)).unwrap();
    assert_abs_diff_eq!(v.re, 0.25, epsilon = 1e-15);
    assert_abs_diff_eq!(d.re, 1.0, epsilon = 1e-15);
    let g = PowerSeriesFunction::from_real(&[0.0, 1.0, 0.5]).unwrap();
    let (v, d) = series_eval_deriv(&g, c(0.2, 0.0)).unwrap();
    assert_abs_diff_eq!(v.re, 0.22, epsilon = 1e-15);
    assert_abs_diff_eq!(d.re, 1.2, epsilon = 1e-15);
}

#[test]
fn area_examples_and_double_quadrature() {
    assert_abs_diff_eq!(series_area(&PowerSeriesFunction::identity()), PI, epsilon = 1e-15);
    assert_eq!(series_area(&PowerSeriesFunction::from_real(&[3.0]).unwrap()), 0.0);
    let f = PowerSeriesFunction::from_real(&[0.0, 1.0, 0.5]).unwrap();
    assert_abs_diff_eq!(series_area(&f), 1.5 * PI, epsilon = 1e-14);
    // ∬ |f'|² dx dy in polar coordinates
    let quad = Quadrature::new(1e-12);
    let direct = quad
        .integrate(
            |rho| {
                let m = periodic_mean(|t| f.eval_deriv_unchecked(ComplexPoint::from_polar(rho, t)).1.norm_sqr(), 1e-14, 1 << 12)
                    .unwrap();
                2.0 * PI * rho * m
            },
            0.0,
            1.0,
        )
        .unwrap()
        .value;
    assert_abs_diff_eq!(direct, series_area(&f), epsilon = 1e-10);
}

#[test]
fn quadrature_examples() {
    assert_abs_diff_eq!(integrate_adaptive(|_| 1.0, 0.0, 1.0, 1e-12).unwrap().value, 1.0, epsilon = 1e-12);
    let l = integrate_adaptive(|t| 2.0 / (1.0 - t * t), 0.0, 0.5, 1e-12).unwrap().value;
    assert_abs_diff_eq!(l, 3f64.ln(), epsilon = 1e-10);
    let s = integrate_adaptive(|t| 1.0 / t.sqrt(), 0.0, 1.0, 1e-10).unwrap().value;
    assert_abs_diff_eq!(s, 2.0, epsilon = 1e-8);
}

#[test]
fn tiny_budget_reports_partial_value() {
    let q = Quadrature::new(1e-15).with_rel_tol(0.0).with_max_panels(2);
    match q.integrate(|t| t.sin() / t.max(1e-300).sqrt(), 0.0, 30.0) {
        Err(HypError::BudgetExceeded { value, .. }) => assert!(value.is_finite()),
        other => panic!("expected a budget error, got {other:?}"),
    }
}

proptest! {
    #[test]
    fn automorphisms_preserve_the_disc(z0 in disc_point(), z in disc_point(), phi in 0.0..2.0 * PI) {
        let t = disc_automorphism(z0).unwrap().compose(&rotation(phi));
        let w = t.apply(z).unwrap();
        prop_assert!(w.norm() < 1.0);
        // Schwarz-Pick with equality: |T'(z)|(1 − |z|²) = 1 − |T(z)|²
        let lhs = t.derivative(z).unwrap().norm() * (1.0 - z.norm_sqr());
        prop_assert!((lhs - (1.0 - w.norm_sqr())).abs() < 1e-12);
    }

    #[test]
    fn inverse_undoes_apply(z0 in disc_point(), z in disc_point()) {
        let t = disc_automorphism(z0).unwrap();
        let back = t.inverse().apply(t.apply(z).unwrap()).unwrap();
        prop_assert!((back - z).norm() < 1e-12);
    }

    #[test]
    fn compose_matches_sequential_application(a in disc_point(), b in disc_point(), z in disc_point()) {
        let (s, t) = (disc_automorphism(a).unwrap(), disc_automorphism(b).unwrap());
        let direct = s.apply(t.apply(z).unwrap()).unwrap();
        prop_assert!((s.compose(&t).apply(z).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn series_matches_naive_sum(coeffs in prop::collection::vec(-1.0..1.0f64, 1..12), z in disc_point()) {
        let f = PowerSeriesFunction::from_real(&coeffs).unwrap();
        let (v, d) = f.eval_deriv_unchecked(z);
        let nv: ComplexPoint = coeffs.iter().enumerate().map(|(n, a)| z.powu(n as u32) * *a).sum();
        let nd: ComplexPoint = coeffs.iter().enumerate().skip(1).map(|(n, a)| z.powu(n as u32 - 1) * (*a * n as f64)).sum();
        prop_assert!((v - nv).norm() < 1e-12);
        prop_assert!((d - nd).norm() < 1e-12);
    }

    #[test]
    fn quadrature_is_exact_on_cubics(a in -3.0..3.0f64, b in -3.0..3.0f64, c3 in -3.0..3.0f64, hi in 0.1..5.0f64) {
        let v = integrate_adaptive(|t| a + b * t + c3 * t * t * t, 0.0, hi, 1e-12).unwrap().value;
        let exact = a * hi + b * hi * hi / 2.0 + c3 * hi.powi(4) / 4.0;
        prop_assert!((v - exact).abs() <= 1e-10 * (1.0 + exact.abs()));
    }
}
