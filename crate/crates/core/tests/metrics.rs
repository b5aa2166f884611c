use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyplab::metrics::{
    density_annulus, density_bounds_distance, density_disc, density_halfplane, density_lower_symmetrization,
    disc_distance, ell, harnack_ratio_check, hyperbolic_disc_area, hyperbolic_mean_value,
};
use hyplab::moebius::{disc_automorphism, rotation};
use hyplab::quadrature::Quadrature;
use hyplab::{c, AnalyticMap, AnnulusCover, ComplexPoint, DomainSpec, PowerSeriesFunction};
use proptest::prelude::*;

fn disc_point(r_max: f64) -> impl Strategy<Value = ComplexPoint> {
    (0.0..r_max, 0.0..2.0 * PI).prop_map(|(r, t)| ComplexPoint::from_polar(r, t))
}

#[test]
fn density_examples() {
    assert_eq!(density_disc(c(0.0, 0.0)).unwrap().lower, 2.0);
    assert_abs_diff_eq!(density_disc(c(0.5, 0.0)).unwrap().upper, 8.0 / 3.0, epsilon = 1e-15);
    assert_eq!(density_halfplane(c(0.0, 1.0)).unwrap().lower, 1.0);
    assert_eq!(density_halfplane(c(0.0, 2.0)).unwrap().lower, 0.5);
    assert_eq!(density_halfplane(c(1.0, 1.0)).unwrap().lower, 1.0);
    let big_r = (PI / 2.0).exp();
    for k in 0..8 {
        let w = ComplexPoint::from_polar(1.0, k as f64 * 0.7);
        assert_abs_diff_eq!(density_annulus(big_r, w).unwrap().lower, 1.0, epsilon = 1e-14);
    }
    assert_abs_diff_eq!(density_annulus(2.0, c(1.0, 0.0)).unwrap().lower, PI / (2.0 * 2f64.ln()), epsilon = 1e-12);
}

#[test]
fn annulus_density_is_the_covering_pullback() {
    // λ_A(f(z))|f'(z)| = λ_𝔻(z) for the covering map of 1/R < |w| < R
    for big_r in [2.0, (PI / 2.0).exp()] {
        let f = AnnulusCover::new(big_r).unwrap();
        for z in [c(0.0, 0.0), c(0.3, 0.4), c(-0.7, 0.1), c(0.1, -0.9)] {
            let (w, d) = f.eval_deriv(z).unwrap();
            let pulled = density_annulus(big_r, w).unwrap().lower * d.norm();
            assert_abs_diff_eq!(pulled, density_disc(z).unwrap().lower, epsilon = 1e-10);
        }
    }
}

#[test]
fn distance_bounds_examples() {
    let e = density_bounds_distance(&DomainSpec::UnitDisc, c(0.0, 0.0)).unwrap();
    assert_eq!((e.lower, e.upper), (0.5, 2.0));
    for eps in [0.5, 1.0] {
        let cusp = DomainSpec::Cusp { eps };
        for t in [2.0, 5.0, 40.0] {
            let est = density_bounds_distance(&cusp, c(t, 0.0)).unwrap();
            assert!(est.upper <= 2.0 * (t + 1.0f64).powf(1.0 + eps));
        }
    }
}

#[test]
fn symmetrization_examples() {
    assert_eq!(density_lower_symmetrization(|_| 1.0, 3.0).unwrap(), 1.0);
    let eps = 0.5;
    let t: f64 = 7.0;
    let v = density_lower_symmetrization(|x: f64| 2.0 / x.powf(1.0 + eps), t).unwrap();
    assert_abs_diff_eq!(v, t.powf(1.0 + eps) / 2.0, epsilon = 1e-12);
    assert!(density_lower_symmetrization(|_| 2.0, 0.0).unwrap() <= 2.0);
}

#[test]
fn distance_examples() {
    assert_abs_diff_eq!(disc_distance(c(0.0, 0.0), c(0.5, 0.0)).unwrap(), 3f64.ln(), epsilon = 1e-15);
    assert_eq!(disc_distance(c(0.2, 0.3), c(0.2, 0.3)).unwrap(), 0.0);
    // straighten with the automorphism, then integrate the density along [0, |T(w)|]
    let (z, w) = (c(0.3, 0.0), c(0.0, -0.4));
    let s = disc_automorphism(z).unwrap().apply(w).unwrap().norm();
    let quad = Quadrature::new(1e-13);
    let along = quad.integrate(|t| 2.0 / (1.0 - t * t), 0.0, s).unwrap().value;
    assert_abs_diff_eq!(disc_distance(z, w).unwrap(), along, epsilon = 1e-9);
}

#[test]
fn ell_tends_to_log_inverse_gap_plus_log_two() {
    assert_eq!(ell(0.0).unwrap(), 0.0);
    assert_abs_diff_eq!(ell(0.5).unwrap(), 3f64.ln(), epsilon = 1e-15);
    let r = 1.0 - 1e-9;
    assert_abs_diff_eq!(ell(r).unwrap() - (1.0 / (1.0 - r)).ln(), 2f64.ln(), epsilon = 1e-8);
}

#[test]
fn harnack_examples() {
    let same = harnack_ratio_check(c(0.4, 0.1), c(0.4, 0.1)).unwrap();
    assert!(same.pass);
    let r = harnack_ratio_check(c(0.0, 0.0), c(0.9, 0.0)).unwrap();
    assert!(r.pass);
    let ratio = density_disc(c(0.0, 0.0)).unwrap().lower / density_disc(c(0.9, 0.0)).unwrap().lower;
    assert_abs_diff_eq!(ratio, 1.0 - 0.81, epsilon = 1e-12);
    assert!(ratio >= 1.0 / (4.0 * 19.0));
}

#[test]
fn disc_area_examples() {
    let d = 1e-4;
    assert_abs_diff_eq!(hyperbolic_disc_area(d).unwrap() / (PI * d * d), 1.0, epsilon = 1e-7);
    assert_abs_diff_eq!(hyperbolic_disc_area(1.0).unwrap(), 4.0 * PI * 0.5f64.sinh().powi(2), epsilon = 1e-12);
    let rho = 1f64.tanh();
    let quad = Quadrature::new(1e-12);
    let polar = quad.integrate(|t| 2.0 * PI * t * 4.0 / (1.0 - t * t).powi(2), 0.0, rho).unwrap().value;
    assert_abs_diff_eq!(hyperbolic_disc_area(2.0).unwrap(), polar, epsilon = 1e-8);
}

#[test]
fn mean_value_examples() {
    let k = PowerSeriesFunction::from_real(&[2.5]).unwrap();
    let r = hyperbolic_mean_value(&k, c(0.3, 0.2), 1.0, 1e-10).unwrap();
    assert!(r.pass && r.lhs < 1e-12);
    let id = PowerSeriesFunction::identity();
    for d in [0.5, 2.0] {
        let r = hyperbolic_mean_value(&id, c(0.0, 0.0), d, 1e-10).unwrap();
        assert!(r.params["mean_re"].abs() < 1e-12 && r.params["mean_im"].abs() < 1e-12);
    }
    let sq = PowerSeriesFunction::from_real(&[0.0, 0.0, 1.0]).unwrap();
    let r = hyperbolic_mean_value(&sq, c(0.3, 0.0), 1.0, 1e-8).unwrap();
    assert!(r.pass);
    assert_abs_diff_eq!(r.params["mean_re"], 0.09, epsilon = 1e-8);
}

proptest! {
    #[test]
    fn density_is_invariant_under_automorphisms(z0 in disc_point(0.9), z in disc_point(0.95), phi in 0.0..2.0 * PI) {
        let t = rotation(phi).compose(&disc_automorphism(z0).unwrap());
        let lhs = density_disc(t.apply(z).unwrap()).unwrap().lower * t.derivative(z).unwrap().norm();
        let rhs = density_disc(z).unwrap().lower;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs);
    }

    #[test]
    fn distance_is_invariant_and_a_metric(z0 in disc_point(0.9), z in disc_point(0.95), w in disc_point(0.95), u in disc_point(0.95)) {
        let t = disc_automorphism(z0).unwrap();
        let d = disc_distance(z, w).unwrap();
        let moved = disc_distance(t.apply(z).unwrap(), t.apply(w).unwrap()).unwrap();
        prop_assert!((d - moved).abs() <= 1e-8 * (1.0 + d));
        prop_assert!((d - disc_distance(w, z).unwrap()).abs() <= 1e-12 * (1.0 + d));
        prop_assert!(d <= disc_distance(z, u).unwrap() + disc_distance(u, w).unwrap() + 1e-9);
    }

    #[test]
    fn harnack_holds_for_random_pairs(z in disc_point(0.999), w in disc_point(0.999)) {
        prop_assert!(harnack_ratio_check(z, w).unwrap().pass);
    }

    #[test]
    fn distance_bounds_bracket_the_exact_density(z in disc_point(0.99)) {
        let exact = density_disc(z).unwrap().lower;
        prop_assert!(density_bounds_distance(&DomainSpec::UnitDisc, z).unwrap().contains(exact, 1e-12));
    }
}
