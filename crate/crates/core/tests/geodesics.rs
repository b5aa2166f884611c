use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyplab::geodesics::{
    complementary_defect, crosscut_k_estimate, crosscut_reach, disc_geodesic, disc_geodesic_error,
    extract_half_level, half_square, harmonic_measure_disc, hausdorff, laplace_solve, separation_check,
    square_with_bumps, CrosscutSample, DiscArc, Grid, PolygonDomain, SquareExtension, WithData, SOLVER_TOL,
};
use hyplab::moebius::disc_automorphism;
use hyplab::{c, ComplexPoint};
use proptest::prelude::*;

const NO_EXTENSION: SquareExtension = SquareExtension { top: None, bottom: None };

/// Poisson integral of the arc's indicator, summed as a Fourier series.
fn poisson_series(a: f64, b: f64, z: ComplexPoint, terms: usize) -> f64 {
    let (r, t) = (z.norm(), z.arg());
    let mut sum = (b - a) / (2.0 * PI);
    for n in 1..=terms {
        let n = n as f64;
        sum += r.powf(n) / (n * PI) * ((n * (b - t)).sin() - (n * (a - t)).sin());
    }
    sum
}

fn solved<D: hyplab::geodesics::GridDomain>(d: &D, h: f64) -> Grid {
    laplace_solve(Grid::new(d, h).unwrap(), SOLVER_TOL).unwrap()
}

/// The square `(−1,1)²` with data 1 on `{1} × [−½, ½]`.
fn square_with_middle_arc() -> PolygonDomain {
    let d = square_with_bumps(&NO_EXTENSION).unwrap();
    let s0 = d.param_of(c(1.0, -1.0));
    d.with_arc((s0 + 0.5, s0 + 1.5)).unwrap()
}

#[test]
fn harmonic_measure_matches_the_poisson_series() {
    let (a, b) = (0.0, PI / 2.0);
    for z in [c(0.5, 0.0), c(0.2, 0.4), c(-0.3, -0.6)] {
        let exact = harmonic_measure_disc(a, b, z).unwrap();
        assert_abs_diff_eq!(exact, poisson_series(a, b, z, 400), epsilon = 1e-8);
    }
    assert_abs_diff_eq!(harmonic_measure_disc(0.0, PI, c(0.0, 0.0)).unwrap(), 0.5, epsilon = 1e-15);
}

#[test]
fn grid_error_is_second_order() {
    let (a, b) = (-0.7, 1.9);
    let arc = DiscArc::new(a, b).unwrap();
    for h in [1.0 / 64.0, 1.0 / 128.0] {
        let g = solved(&arc, h);
        let err = g
            .interior_values()
            .map(|(p, v)| (v - harmonic_measure_disc(a, b, p).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(err <= 5.0 * h * h, "h = {h}: max error {err}");
    }
}

#[test]
fn constant_and_linear_data() {
    let sq = PolygonDomain::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)], (1.0, 2.0)).unwrap();
    let h = 1.0 / 32.0;
    let g = laplace_solve(Grid::new(&WithData::new(sq.clone(), |_| 0.7), h).unwrap(), 1e-12).unwrap();
    assert!(g.interior_values().all(|(_, v)| (v - 0.7).abs() < 1e-9));
    let g = laplace_solve(Grid::new(&WithData::new(sq, |p: ComplexPoint| p.re), h).unwrap(), 1e-12).unwrap();
    let worst = g.interior_values().map(|(p, v)| (v - p.re).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn half_circle_level_set_is_the_diameter() {
    let h = 1.0 / 64.0;
    for (a, b) in [(-PI / 2.0, PI / 2.0), (0.0, PI)] {
        let g = solved(&DiscArc::new(a, b).unwrap(), h);
        let level = extract_half_level(&g).unwrap();
        let mid = a + (b - a) / 2.0;
        let normal = ComplexPoint::from_polar(1.0, mid);
        // distance to the diameter orthogonal to the arc's midpoint direction
        let worst = level.points.iter().map(|p| (p.conj() * normal).re.abs()).fold(0.0, f64::max);
        assert!(worst <= 2.0 * h, "arc ({a}, {b}): {worst}");
    }
}

#[test]
fn grid_geodesics_approach_the_closed_form() {
    let h = 1.0 / 128.0;
    for (a, b) in [(-1.0, 2.0), (0.3, 4.0)] {
        let err = disc_geodesic_error(a, b, h, SOLVER_TOL).unwrap();
        assert!(err <= 3.0 * h, "arc ({a}, {b}): {err}");
    }
    let g = disc_geodesic(0.0, 1.0, 0.0, 101).unwrap();
    assert!(hausdorff(&g, &g) == 0.0);
}

#[test]
fn square_geodesic_bulges_left() {
    let e = half_square().unwrap();
    let h = 1.0 / 64.0;
    let level = extract_half_level(&solved(&e, h)).unwrap();
    assert!(level.points.iter().all(|p| p.re < 1.0 + 1e-12));
    let leftmost = level.points.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    assert!(leftmost < 0.9);
    let ends = [level.points[0], *level.points.last().unwrap()];
    for p in ends {
        assert!((p - c(1.0, 0.5)).norm() < 4.0 * h || (p - c(1.0, -0.5)).norm() < 4.0 * h, "end {p}");
    }
}

#[test]
fn k_estimate_is_stable() {
    let k64 = crosscut_k_estimate(1.0 / 64.0, SOLVER_TOL).unwrap();
    let k128 = crosscut_k_estimate(1.0 / 128.0, SOLVER_TOL).unwrap();
    assert!(k64 > 0.6 && k64 < 0.8);
    assert_abs_diff_eq!(k64, k128, epsilon = 0.01);
}

#[test]
fn complementary_arcs_sum_to_one() {
    let defect = complementary_defect(0.4, 2.9, 1.0 / 64.0, 1e-10).unwrap();
    assert!(defect < 1e-7, "{defect}");
}

#[test]
fn separation_holds_and_near_ties_thin_out() {
    let e = half_square().unwrap();
    let d = square_with_middle_arc();
    let mut fractions = Vec::new();
    for h in [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0] {
        let rep = separation_check(&solved(&d, h), &solved(&e, h), &e).unwrap();
        assert!(rep.pass, "h = {h}: {rep:?}");
        fractions.push(rep.params["near_tie_fraction"]);
    }
    assert!(fractions.windows(2).all(|w| w[1] <= w[0]), "{fractions:?}");
}

#[test]
fn separation_flags_the_degenerate_pair() {
    let e = half_square().unwrap();
    let g = solved(&e, 1.0 / 32.0);
    let rep = separation_check(&g, &g, &e).unwrap();
    assert!(!rep.pass);
    assert!(rep.notes.contains("degenerate"));
}

#[test]
fn symmetric_crosscut_crosses_at_the_center() {
    let d = square_with_bumps(&NO_EXTENSION).unwrap();
    let arc = (d.param_of(c(0.0, -1.0)), d.param_of(c(0.0, 1.0)));
    let sample = CrosscutSample { extension: NO_EXTENSION, domain: d.with_arc(arc).unwrap() };
    let h = 1.0 / 64.0;
    let summary = crosscut_reach(&[sample], h, SOLVER_TOL).unwrap();
    assert_eq!(summary.skipped, 0);
    assert!(summary.max_abscissa < h, "{}", summary.max_abscissa);
    assert!(summary.max_reach < 4.0 * h);
}

#[test]
fn csv_output_has_a_header_and_one_row_per_node() {
    let g = solved(&DiscArc::new(0.0, 2.0).unwrap(), 1.0 / 16.0);
    let mut buf = Vec::new();
    g.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,value"));
    assert_eq!(lines.count(), g.interior_count());
    let mut buf = Vec::new();
    extract_half_level(&g).unwrap().write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("x,y,value\n"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn harmonic_measure_is_conformally_invariant(
        a in 0.0..2.0 * PI, len in 0.2..5.5f64, z0r in 0.0..0.8f64, z0t in 0.0..2.0 * PI, zr in 0.0..0.9f64, zt in 0.0..2.0 * PI,
    ) {
        let (z0, z) = (ComplexPoint::from_polar(z0r, z0t), ComplexPoint::from_polar(zr, zt));
        let t = disc_automorphism(z0).unwrap();
        let start = t.apply(ComplexPoint::from_polar(1.0, a)).unwrap().arg();
        let end = t.apply(ComplexPoint::from_polar(1.0, a + len)).unwrap().arg();
        let moved = harmonic_measure_disc(start, end, t.apply(z).unwrap()).unwrap();
        prop_assert!((moved - harmonic_measure_disc(a, a + len, z).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn harmonic_measure_lies_in_the_unit_interval(a in 0.0..2.0 * PI, len in 0.01..6.2f64, r in 0.0..0.999f64, t in 0.0..2.0 * PI) {
        let w = harmonic_measure_disc(a, a + len, ComplexPoint::from_polar(r, t)).unwrap();
        prop_assert!((0.0..=1.0).contains(&w));
    }
}
