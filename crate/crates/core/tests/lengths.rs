use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyplab::lengths::{
    ell, euclidean_length_radial, fit_growth_exponent, image_hyperbolic_length, keogh_bound, lp_scale_norm,
    radial_lp_norm,
};
use hyplab::quadrature::Quadrature;
use hyplab::{c, AnnulusCover, ComplexPoint, DomainSpec, HypError, PowerSeriesFunction};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = PowerSeriesFunction> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..9).prop_map(|v| {
        let coeffs = v.iter().enumerate().map(|(n, &(a, b))| c(a, b) / (n.max(1) as f64)).collect();
        PowerSeriesFunction::new(coeffs).unwrap()
    })
}

#[test]
fn euclidean_length_examples() {
    let id = PowerSeriesFunction::identity();
    for r in [0.0, 0.3, 0.9] {
        assert_abs_diff_eq!(euclidean_length_radial(&id, r, 1.2, 1e-12).unwrap(), r, epsilon = 1e-12);
    }
    let sq = PowerSeriesFunction::from_real(&[0.0, 0.0, 1.0]).unwrap();
    assert_abs_diff_eq!(euclidean_length_radial(&sq, 0.5, 0.0, 1e-12).unwrap(), 0.25, epsilon = 1e-12);
    assert!(euclidean_length_radial(&id, 1.0, 0.0, 1e-12).is_err());
}

#[test]
fn image_length_examples() {
    let cover = AnnulusCover::standard();
    let annulus = DomainSpec::Annulus { outer_radius: cover.outer_radius() };
    let id = PowerSeriesFunction::identity();
    for r in [0.2, 0.5, 0.9, 0.99] {
        let l = ell(r).unwrap();
        let a = image_hyperbolic_length(&cover, &annulus, r, 0.0, 1e-11).unwrap();
        assert_abs_diff_eq!(a.hyperbolic_lower, l, epsilon = 1e-8);
        assert_abs_diff_eq!(a.hyperbolic_upper, l, epsilon = 1e-8);
        let d = image_hyperbolic_length(&id, &DomainSpec::UnitDisc, r, 0.7, 1e-11).unwrap();
        assert_abs_diff_eq!(d.hyperbolic_lower, l, epsilon = 1e-8);
    }
    let big = PowerSeriesFunction::from_real(&[0.0, 2.0]).unwrap();
    assert!(matches!(
        image_hyperbolic_length(&big, &DomainSpec::UnitDisc, 0.9, 0.0, 1e-10),
        Err(HypError::Range(_))
    ));
}

#[test]
fn scale_norm_examples() {
    let id = PowerSeriesFunction::identity();
    assert_abs_diff_eq!(lp_scale_norm(&id, 2.0, 1e-10).unwrap(), PI.sqrt(), epsilon = 1e-7);
    let konst = PowerSeriesFunction::from_real(&[1.5]).unwrap();
    assert_eq!(lp_scale_norm(&konst, 2.0, 1e-10).unwrap(), 0.0);
    let f = PowerSeriesFunction::new(vec![c(0.1, 0.0), c(0.5, 0.2), c(-0.2, 0.1), c(0.0, 0.3)]).unwrap();
    assert_abs_diff_eq!(lp_scale_norm(&f, 2.0, 1e-10).unwrap().powi(2), f.area(), epsilon = 1e-7);
}

#[test]
fn radial_norm_examples() {
    let id = PowerSeriesFunction::identity();
    assert_abs_diff_eq!(radial_lp_norm(&id, 1.0, 0.0, None).unwrap(), 1.0, epsilon = 1e-9);
    assert_abs_diff_eq!(radial_lp_norm(&id, 2.0, 0.0, None).unwrap(), (1.0f64 / 3.0).sqrt(), epsilon = 1e-9);
    let p = PowerSeriesFunction::from_real(&[0.0, 1.0, -0.3, 0.05]).unwrap();
    for q in [1.0, 1.5, 3.0] {
        assert!(radial_lp_norm(&p, q, 0.4, None).unwrap().is_finite());
    }
}

#[test]
fn keogh_examples() {
    let id = PowerSeriesFunction::identity();
    let b = keogh_bound(&id, 0.5, 1).unwrap();
    assert_abs_diff_eq!(b, (4.0f64 / 3.0).ln().sqrt(), epsilon = 1e-14);
    assert!(b >= 0.5);
    assert!(keogh_bound(&id, 1e-8, 1).unwrap() < 1e-7);
    // N = 1 gives √(A/π · log 1/(1 − r²))
    let f = PowerSeriesFunction::from_real(&[0.0, 0.6, 0.3, -0.1]).unwrap();
    let r: f64 = 0.8;
    let expect = (f.area() / PI * (1.0 / (1.0 - r * r)).ln()).sqrt();
    assert_abs_diff_eq!(keogh_bound(&f, r, 1).unwrap(), expect, epsilon = 1e-13);
}

#[test]
fn fit_examples() {
    let exact: Vec<(f64, f64)> = (0..20).map(|i| 10f64.powf(i as f64 / 4.0)).map(|l| (l, l)).collect();
    let f = fit_growth_exponent(&exact).unwrap();
    assert_abs_diff_eq!(f.exponent, 1.0, epsilon = 1e-12);
    assert!(f.residual < 1e-12);
    let root: Vec<(f64, f64)> = exact.iter().map(|&(l, _)| (l, l.sqrt())).collect();
    assert_abs_diff_eq!(fit_growth_exponent(&root).unwrap().exponent, 0.5, epsilon = 1e-12);
    assert!(fit_growth_exponent(&exact[..2]).is_err());
    assert!(fit_growth_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
}

#[test]
fn ell_matches_density_quadrature() {
    let quad = Quadrature::new(1e-13);
    for r in [0.1, 0.5, 0.9, 0.999] {
        let q = quad.integrate(|t| 2.0 / (1.0 - t * t), 0.0, r).unwrap().value;
        assert_abs_diff_eq!(ell(r).unwrap(), q, epsilon = 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn keogh_bounds_the_euclidean_length(f in small_poly(), r in 0.05..0.99f64, t in 0.0..2.0 * PI, split in 1usize..3) {
        let e = euclidean_length_radial(&f, r, t, 1e-12).unwrap();
        let split = split.min(f.order());
        prop_assert!(e <= keogh_bound(&f, r, split).unwrap() + 1e-10);
    }

    #[test]
    fn schwarz_pick_shortens_image_curves(f in small_poly(), r in 0.1..0.99f64, t in 0.0..2.0 * PI) {
        // scale into the disc: sup |g| ≤ Σ|a_n| < 1
        let l1 = f.coefficient_l1();
        let g = PowerSeriesFunction::new(f.coeffs().iter().map(|a| a * (0.95 / l1.max(1.0))).collect()).unwrap();
        let rep = image_hyperbolic_length(&g, &DomainSpec::UnitDisc, r, t, 1e-11).unwrap();
        prop_assert!(rep.hyperbolic_upper <= ell(r).unwrap() * (1.0 + 1e-10));
    }

    #[test]
    fn fit_recovers_power_laws(alpha in 0.1..2.0f64, k in 0.1..10.0f64) {
        let samples: Vec<(f64, f64)> = (0..12).map(|i| 10f64.powf(i as f64 / 3.0)).map(|l| (l, k * l.powf(alpha))).collect();
        let fit = fit_growth_exponent(&samples).unwrap();
        prop_assert!((fit.exponent - alpha).abs() < 1e-10);
        prop_assert!(fit.is_meaningful());
    }

    #[test]
    fn euclidean_length_is_rotation_invariant(f in small_poly(), r in 0.1..0.95f64, t in 0.0..2.0 * PI, phi in 0.0..2.0 * PI) {
        // g(z) = f(e^{iφ} z) has E_g(r, t) = E_f(r, t + φ)
        let rot = ComplexPoint::from_polar(1.0, phi);
        let g = PowerSeriesFunction::new(f.coeffs().iter().enumerate().map(|(n, a)| a * rot.powu(n as u32)).collect()).unwrap();
        let a = euclidean_length_radial(&g, r, t, 1e-12).unwrap();
        let b = euclidean_length_radial(&f, r, t + phi, 1e-12).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}
