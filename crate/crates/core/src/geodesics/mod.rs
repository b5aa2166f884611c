//! Harmonic measure and hyperbolic geodesics as its half-level sets:
//! closed forms in the disc, finite differences on Jordan grid domains,
//! the separation of nested geodesics, and the crosscut reach of geodesics
//! in domains containing a square.

mod crosscut;
mod grid;
mod level;
mod shapes;

use std::f64::consts::PI;

use crate::complex::{ensure_in_disc, unit, ComplexPoint};
use crate::error::{domain_err, HypError, Result};
use crate::report::InequalityReport;

pub use crosscut::{
    crosscut_distance, crosscut_family, crosscut_k_estimate, crosscut_reach, crosscut_reach_at, half_square,
    square_with_bumps, CrosscutSample, CrosscutSummary, SquareExtension,
};
pub use grid::{laplace_solve, solve_in_place, Grid, GridDomain, Jump, SOLVER_TOL, SWEEP_BUDGET};
pub use level::{extract_half_level, extract_level, hausdorff, LevelPolyline};
pub use shapes::{DiscArc, PolygonDomain, WithData};

/// Harmonic measure at `z` of the counterclockwise arc from `e^{i arc_start}`
/// to `e^{i arc_end}`: move `z` to 0 by a disc automorphism and measure the
/// image arc.
pub fn harmonic_measure_disc(arc_start: f64, arc_end: f64, z: ComplexPoint) -> Result<f64> {
    ensure_in_disc(z)?;
    let arc = DiscArc::new(arc_start, arc_end)?;
    let t = |w: ComplexPoint| (w - z) / (ComplexPoint::new(1.0, 0.0) - z.conj() * w);
    let (a, b) = (t(unit(arc.start)), t(unit(arc.end)));
    let len = (b.arg() - a.arg()).rem_euclid(2.0 * PI);
    // a full-circle image arc shows up as 0 when the endpoints nearly meet
    Ok(if len == 0.0 && arc.length() > PI { 1.0 } else { len / (2.0 * PI) })
}

/// Points of the hyperbolic geodesic of the disc joining `e^{iα}` and
/// `e^{iβ}`, keeping only those at distance at least `margin` from the circle.
pub fn disc_geodesic(alpha: f64, beta: f64, margin: f64, samples: usize) -> Result<LevelPolyline> {
    let arc = DiscArc::new(alpha, beta)?;
    let mut m = arc.start + arc.length() / 2.0;
    let mut delta = arc.length() / 2.0;
    if delta > PI / 2.0 {
        m += PI;
        delta = PI - delta;
    }
    let n = samples.max(2);
    let points: Vec<ComplexPoint> = if (delta - PI / 2.0).abs() < 1e-12 {
        (0..n).map(|i| unit(m + PI / 2.0) * (1.0 - 2.0 * i as f64 / (n - 1) as f64)).collect()
    } else {
        let center = unit(m) / delta.cos();
        let radius = delta.tan();
        let (p0, p1) = (PI / 2.0 + delta, 1.5 * PI - delta);
        (0..n)
            .map(|i| center + unit(m) * unit(p0 + (p1 - p0) * i as f64 / (n - 1) as f64) * radius)
            .collect()
    };
    let kept: Vec<ComplexPoint> = points.into_iter().filter(|p| 1.0 - p.norm() >= margin).collect();
    if kept.len() < 2 {
        return Err(HypError::NotFound(format!("geodesic has no points at distance {margin} from the circle")));
    }
    Ok(LevelPolyline { points: kept, h: 0.0 })
}

/// Solves the disc grid for the arc and returns the half-level polyline
/// clipped at `3h` from the circle, with the solved grid.
pub fn disc_level_geodesic(alpha: f64, beta: f64, h: f64, tol: f64) -> Result<(LevelPolyline, Grid)> {
    let arc = DiscArc::new(alpha, beta)?;
    let grid = laplace_solve(Grid::new(&arc, h)?, tol)?;
    let level = extract_half_level(&grid)?.clip(&arc, 3.0 * h)?;
    Ok((level, grid))
}

/// Hausdorff distance between the grid geodesic for the arc and the closed
/// form, both clipped at `3h` from the circle.
pub fn disc_geodesic_error(alpha: f64, beta: f64, h: f64, tol: f64) -> Result<f64> {
    let (level, _) = disc_level_geodesic(alpha, beta, h, tol)?;
    let exact = disc_geodesic(alpha, beta, 3.0 * h, 4001)?;
    Ok(hausdorff(&level, &exact))
}

/// Checks the separation of nested geodesics on solved grids of `D ⊃ E`
/// carrying the harmonic measures `ω` (in `D`) and `θ` (in `E`) of a
/// common boundary arc: `ω > θ` at every interior node of `E`, the
/// geodesic `η = {θ = ½}` lies in `{ω > ½}`, and the part of
/// `δ = {ω = ½}` inside `E` lies in `{θ < ½}`.
///
/// `lhs` is the largest of `θ − ω` over the nodes and of the two level-set
/// margins; the check is strict, so `rhs` is slightly negative.
pub fn separation_check<E: GridDomain + ?Sized>(d: &Grid, e: &Grid, e_domain: &E) -> Result<InequalityReport> {
    if !(d.is_solved() && e.is_solved()) {
        return Err(HypError::Configuration("separation needs two solved grids".into()));
    }
    if (d.h - e.h).abs() > 1e-12 * d.h {
        return Err(HypError::Configuration(format!("grid spacings differ: {} and {}", d.h, e.h)));
    }
    let mut max_diff = f64::NEG_INFINITY;
    let mut near_ties = 0usize;
    let mut nodes = 0usize;
    let mut all_equal = true;
    for (p, theta) in e.interior_values() {
        let Some(k) = d.index_of(p) else {
            return Err(HypError::Configuration("grids are not node-aligned".into()));
        };
        if !d.interior[k] {
            return Err(HypError::Configuration(format!("node {p} of E is not interior to D")));
        }
        let omega = d.value(k);
        let diff = theta - omega;
        max_diff = max_diff.max(diff);
        all_equal &= diff.abs() <= 1e-15;
        if diff.abs() < e.h {
            near_ties += 1;
        }
        nodes += 1;
    }

    let margin = 3.0 * e.h;
    let eta = extract_half_level(e)?.clip(e_domain, margin)?;
    let mut eta_margin = f64::NEG_INFINITY;
    for p in &eta.points {
        if let Some(w) = d.value_at(*p) {
            eta_margin = eta_margin.max(0.5 - w);
        }
    }
    let delta = extract_half_level(d)?;
    let mut delta_margin = f64::NEG_INFINITY;
    let mut delta_inside = 0usize;
    for p in &delta.points {
        if e_domain.contains(*p) && e_domain.boundary_distance(*p) >= margin {
            if let Some(t) = e.value_at(*p) {
                delta_margin = delta_margin.max(t - 0.5);
                delta_inside += 1;
            }
        }
    }

    let lhs = max_diff.max(eta_margin).max(delta_margin);
    let mut report = InequalityReport::new("separation", lhs, -1e-12, 0.0)
        .param("h", e.h)
        .param("nodes", nodes as f64)
        .param("max_theta_minus_omega", max_diff)
        .param("eta_margin", eta_margin)
        .param("delta_margin", delta_margin)
        .param("delta_points_in_e", delta_inside as f64)
        .param("near_ties", near_ties as f64)
        .param("near_tie_fraction", near_ties as f64 / nodes.max(1) as f64);
    if all_equal {
        report = report.fail("degenerate case D = E: the boundary of E must leave the boundary of D");
    }
    Ok(report)
}

/// `ω + ω' = 1` for complementary disc arcs: the largest node-wise defect.
pub fn complementary_defect(alpha: f64, beta: f64, h: f64, tol: f64) -> Result<f64> {
    let arc = DiscArc::new(alpha, beta)?;
    let a = laplace_solve(Grid::new(&arc, h)?, tol)?;
    let b = laplace_solve(Grid::new(&arc.complement(), h)?, tol)?;
    let defect = a
        .interior_values()
        .zip(b.interior_values())
        .map(|((_, x), (_, y))| (x + y - 1.0).abs())
        .fold(0.0, f64::max);
    if !defect.is_finite() {
        return domain_err("complementary solves disagree on the node set");
    }
    Ok(defect)
}
