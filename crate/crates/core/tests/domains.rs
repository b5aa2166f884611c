use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyplab::complex::segment_distance;
use hyplab::domains::{
    chain_annuli_lengths, gamma_clearance, gamma_path, lens_membership, slit_positions, slit_rectangle_waypoints,
    slit_segments, stolz_contains_euclidean,
};
use hyplab::metrics::disc_distance;
use hyplab::quadrature::Quadrature;
use hyplab::{c, ComplexPoint, DomainSpec, HypError};
use proptest::prelude::*;

/// Distance from `(t, 0)` to the cusp boundary by a dense scan of the
/// curve `y = x^{−(1+ε)}` and the left edge `x = 1`.
fn cusp_distance_scan(eps: f64, t: f64) -> f64 {
    let scan = |lo: f64, hi: f64, n: usize| {
        (0..=n)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / n as f64;
                ((x - t).powi(2) + x.powf(-2.0 * (1.0 + eps))).sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let near = scan((t - 0.5).max(1.0), t + 0.5, 1_000_000);
    scan(1.0, 2.0 * t + 2.0, 100_000).min(near).min(t - 1.0)
}

#[test]
fn cusp_distance_matches_a_dense_scan() {
    for eps in [0.5, 1.0] {
        let cusp = DomainSpec::Cusp { eps };
        for t in [2.0, 3.5, 10.0, 60.0] {
            let d = cusp.boundary_distance(c(t, 0.0)).unwrap();
            let scan = cusp_distance_scan(eps, t);
            assert!(d <= scan + 1e-12, "eps {eps} t {t}: {d} vs {scan}");
            assert!(scan - d < 1e-6 * scan, "eps {eps} t {t}: {d} vs {scan}");
        }
        let t: f64 = 1e3;
        let d = cusp.boundary_distance(c(t, 0.0)).unwrap();
        assert_abs_diff_eq!(d * t.powf(1.0 + eps), 1.0, epsilon = 1e-3);
    }
}

#[test]
fn waypoints_examples() {
    for eps in [0.5, 1.0] {
        let w = slit_rectangle_waypoints(eps, 5);
        assert_eq!(w[0], c(0.5, 0.0));
        let s = slit_positions(eps, 5);
        assert_abs_diff_eq!(s[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 1.0 + 2f64.powf(-(1.0 + eps)), epsilon = 1e-15);
        // w_k sits at the middle of the real gap between S_k and S_{k+1}
        for k in 1..5 {
            assert_abs_diff_eq!(w[k].im, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(w[k].re, 0.5 * (s[k - 1] + s[k]), epsilon = 1e-15);
        }
    }
}

#[test]
fn waypoint_distance_is_the_nearest_slit() {
    let eps = 0.5;
    let domain = DomainSpec::SlitRectangle { eps, n_slits: 12 };
    let segs = slit_segments(eps, 12);
    for w in slit_rectangle_waypoints(eps, 8).into_iter().skip(1) {
        let exhaustive = segs.iter().map(|&(a, b)| segment_distance(w, a, b)).fold(f64::INFINITY, f64::min);
        let d = domain.boundary_distance(w).unwrap();
        assert!(d <= exhaustive + 1e-14);
        assert_abs_diff_eq!(d, exhaustive.min(d), epsilon = 1e-14);
    }
}

#[test]
fn gamma_paths_have_the_constructed_length_and_clearance() {
    for eps in [0.5, 1.0] {
        let domain = DomainSpec::SlitRectangle { eps, n_slits: 40 };
        for k in [0usize, 1, 5, 20] {
            let path = gamma_path(eps, k).unwrap();
            let a = |n: usize| (n as f64).powf(-(1.0 + eps));
            assert_abs_diff_eq!(path.euclidean_length(), 2.0 + 0.5 * (a(k + 1) + a(k + 2)), epsilon = 1e-12);
            assert!(path.euclidean_length() <= 2.0 + a(k + 1));
            let d_k = 1.0 / (2.0 * (k as f64 + 2.0).powf(1.0 + eps));
            assert_abs_diff_eq!(gamma_clearance(eps, k), d_k, epsilon = 1e-15);
            let quad = Quadrature::new(1e-9).with_rel_tol(1e-9).with_max_panels(20_000);
            let min_dist = path
                .segments()
                .iter()
                .flat_map(|&(a, b)| (0..=200).map(move |i| a + (b - a) * (i as f64 / 200.0)))
                .map(|w| domain.boundary_distance(w).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(min_dist >= d_k - 1e-12, "k {k}: {min_dist} < {d_k}");
            let h = path.integrate(|w| 2.0 / domain.boundary_distance(w).unwrap(), &quad).unwrap();
            assert!(h <= 12.0 * (k as f64 + 2.0).powf(1.0 + eps));
        }
    }
}

#[test]
fn stolz_examples() {
    assert!(stolz_contains_euclidean(2.0, 0.5));
    assert!(!stolz_contains_euclidean(1.0, 0.5));
    for c0 in [0.1, 1.0, 10.0] {
        assert!(stolz_contains_euclidean(c0, 1e-9));
    }
}

#[test]
fn lens_membership_matches_grid_search() {
    assert!(lens_membership(0.0, 0.1, c(0.7, 0.0)).unwrap());
    assert!(lens_membership(0.0, 0.1, c(0.0, 1e-4)).unwrap());
    let z = c(0.0, 0.3);
    let n = 1_000_000;
    let grid_min = (0..=n)
        .map(|i| disc_distance(z, c((1.0 - 1e-6) * i as f64 / n as f64, 0.0)).unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(lens_membership(0.0, 0.5, z).unwrap(), grid_min < 0.5);
    // on the imaginary axis the nearest ray point is the origin
    assert_abs_diff_eq!(grid_min, disc_distance(z, c(0.0, 0.0)).unwrap(), epsilon = 1e-12);
}

#[test]
fn chain_examples() {
    let (e1, _, _) = chain_annuli_lengths(1.0, 1).unwrap();
    assert_abs_diff_eq!(e1, 3.0 * PI, epsilon = 1e-12);
    let ratios: Vec<f64> = [1usize, 10, 100, 1000]
        .iter()
        .map(|&n| {
            let (_, coarse, exact) = chain_annuli_lengths(1.5, n).unwrap();
            coarse / exact
        })
        .collect();
    for r in &ratios {
        assert_abs_diff_eq!(*r, ratios[0], epsilon = 1e-12);
    }
    let (e, _, l) = chain_annuli_lengths(1.0, 10_000).unwrap();
    assert_abs_diff_eq!(e.ln() / l.ln(), 0.5, epsilon = 0.05);
}

#[test]
fn invalid_domains_are_rejected() {
    assert!(matches!(DomainSpec::Strip { half_width: -1.0 }.validate(), Err(HypError::Construction(_))));
    assert!(DomainSpec::Annulus { outer_radius: 0.5 }.validate().is_err());
    assert!(DomainSpec::channel_from_fn(|_| -1.0, 3.0, 10).is_err());
}

proptest! {
    #[test]
    fn disc_boundary_distance_is_one_minus_modulus(r in 0.0..0.999f64, t in 0.0..2.0 * PI) {
        let w = ComplexPoint::from_polar(r, t);
        prop_assert!((DomainSpec::UnitDisc.boundary_distance(w).unwrap() - (1.0 - r)).abs() < 1e-14);
    }

    #[test]
    fn density_bands_are_ordered(x in 1.5..50.0f64, frac in -0.9..0.9f64) {
        let cusp = DomainSpec::Cusp { eps: 1.0 };
        let w = c(x, frac / (x * x));
        prop_assume!(cusp.contains(w));
        let est = cusp.density(w).unwrap();
        prop_assert!(0.0 < est.lower && est.lower <= est.upper);
    }

    #[test]
    fn lens_regions_are_nested(d in 0.05..2.0f64, r in 0.0..0.95f64, t in 0.0..2.0 * PI) {
        let z = ComplexPoint::from_polar(r, t);
        if lens_membership(0.3, d, z).unwrap() {
            prop_assert!(lens_membership(0.3, 1.5 * d, z).unwrap());
        }
    }
}
