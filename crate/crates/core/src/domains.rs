//! Concrete plane domains: model domains, the cusp, the slit rectangle,
//! channel domains, a chain of abutting annuli, and hyperbolic Stolz regions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{c, ensure_finite, ensure_in_disc, segment_distance, unit, ComplexPoint};
use crate::curve::Curve;
use crate::error::{domain_err, HypError, Result};
use crate::metrics::{
    density_annulus, density_disc, density_halfplane, density_strip, disc_distance, DensityEstimate,
};

/// Half-height of the slit rectangle.
const SLIT_HALF_HEIGHT: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    UnitDisc,
    /// `Im z > 0`
    HalfPlane,
    /// `|Im z| < half_width`
    Strip { half_width: f64 },
    /// `1/R < |w| < R`
    Annulus { outer_radius: f64 },
    /// `x > 1, |y| < x^{−(1+ε)}`
    Cusp { eps: f64 },
    /// `(0, s) × (−3/2, 3/2)` minus the first `n_slits` slits `S_n` at
    /// `x = s_n`, alternately rising from the bottom edge to `y = 1/2`
    /// (odd `n`) and hanging from the top edge to `y = −1/2` (even `n`).
    /// `s_n = Σ_{j≤n} j^{−(1+ε)}` and `s` is the full sum.
    SlitRectangle { eps: f64, n_slits: usize },
    /// `𝔻 ∪ {0 < x < x_max, |y| < a(x)}`, with `a` sampled at
    /// `widths.len()` equally spaced abscissae on `[0, x_max]` and linearly
    /// interpolated. The channel is closed off at `x = x_max`.
    Channel { x_max: f64, widths: Vec<f64> },
    /// Annuli `A_k = {r_k/2 < |z − c_k| < 2 r_k}`, `r_k = 1/k`, `k = 1..n`,
    /// centered on the real axis so that consecutive annuli overlap.
    /// A geodesic winds `⌊k^β⌋ + 1/2` times around `A_k`.
    ChainOfAnnuli { beta: f64, n: usize },
}

impl DomainSpec {
    /// Samples `a` on `samples` points of `[0, x_max]`.
    pub fn channel_from_fn<A: Fn(f64) -> f64>(a: A, x_max: f64, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(HypError::Construction("channel needs at least two width samples".into()));
        }
        let widths = (0..samples)
            .map(|i| a(x_max * i as f64 / (samples - 1) as f64))
            .collect();
        let d = DomainSpec::Channel { x_max, widths };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HypError::Construction(msg));
        match self {
            DomainSpec::UnitDisc | DomainSpec::HalfPlane => Ok(()),
            DomainSpec::Strip { half_width } if !(*half_width > 0.0 && half_width.is_finite()) => {
                bad(format!("strip half-width {half_width} must be positive"))
            }
            DomainSpec::Annulus { outer_radius } if !(*outer_radius > 1.0 && outer_radius.is_finite()) => {
                bad(format!("annulus outer radius {outer_radius} must exceed 1"))
            }
            DomainSpec::Cusp { eps } | DomainSpec::SlitRectangle { eps, .. } if !(*eps > 0.0 && eps.is_finite()) => {
                bad(format!("eps = {eps} must be positive"))
            }
            DomainSpec::SlitRectangle { n_slits, .. } if *n_slits == 0 => bad("need at least one slit".into()),
            DomainSpec::Channel { x_max, widths } => {
                if !(*x_max > 1.0 && x_max.is_finite()) {
                    return bad(format!("channel length {x_max} must exceed 1"));
                }
                if widths.len() < 2 {
                    return bad("channel needs at least two width samples".into());
                }
                if widths.iter().any(|a| !(*a > 0.0 && *a <= 1.0)) {
                    return bad("channel widths must lie in (0, 1]".into());
                }
                let dx = x_max / (widths.len() - 1) as f64;
                if widths.windows(2).any(|w| (w[1] - w[0]).abs() > dx * (1.0 + 1e-12)) {
                    return bad("channel width must have slope at most 1".into());
                }
                Ok(())
            }
            DomainSpec::ChainOfAnnuli { beta, n } => {
                if !(*beta > 0.0 && beta.is_finite()) || *n == 0 {
                    return bad(format!("chain needs beta > 0 and n >= 1, got {beta}, {n}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DomainSpec::UnitDisc => "unit_disc",
            DomainSpec::HalfPlane => "half_plane",
            DomainSpec::Strip { .. } => "strip",
            DomainSpec::Annulus { .. } => "annulus",
            DomainSpec::Cusp { .. } => "cusp",
            DomainSpec::SlitRectangle { .. } => "slit_rectangle",
            DomainSpec::Channel { .. } => "channel",
            DomainSpec::ChainOfAnnuli { .. } => "chain_of_annuli",
        }
    }

    pub fn is_simply_connected(&self) -> bool {
        !matches!(self, DomainSpec::Annulus { .. } | DomainSpec::ChainOfAnnuli { .. })
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, DomainSpec::HalfPlane | DomainSpec::Strip { .. } | DomainSpec::Cusp { .. })
    }

    pub fn contains(&self, w: ComplexPoint) -> bool {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return false;
        }
        let (x, y) = (w.re, w.im);
        match self {
            DomainSpec::UnitDisc => w.norm_sqr() < 1.0,
            DomainSpec::HalfPlane => y > 0.0,
            DomainSpec::Strip { half_width } => y.abs() < *half_width,
            DomainSpec::Annulus { outer_radius } => {
                let r = w.norm();
                r < *outer_radius && r * outer_radius > 1.0
            }
            DomainSpec::Cusp { eps } => x > 1.0 && y.abs() < x.powf(-(1.0 + eps)),
            DomainSpec::SlitRectangle { eps, n_slits } => {
                if !(x > 0.0 && x < slit_total_width(*eps) && y.abs() < SLIT_HALF_HEIGHT) {
                    return false;
                }
                !slit_segments(*eps, *n_slits)
                    .iter()
                    .any(|(a, b)| x == a.re && y >= a.im && y <= b.im)
            }
            DomainSpec::Channel { x_max, widths } => {
                w.norm_sqr() < 1.0 || (x > 0.0 && x < *x_max && y.abs() < interpolate(widths, *x_max, x))
            }
            DomainSpec::ChainOfAnnuli { n, .. } => chain_layout(*n).iter().any(|a| a.contains(w)),
        }
    }

    /// Euclidean distance from an interior point to the boundary.
    pub fn boundary_distance(&self, w: ComplexPoint) -> Result<f64> {
        let w = ensure_finite(w)?;
        if !self.contains(w) {
            return domain_err(format!("{w} is not in the {} domain", self.label()));
        }
        let (x, y) = (w.re, w.im);
        Ok(match self {
            DomainSpec::UnitDisc => 1.0 - w.norm(),
            DomainSpec::HalfPlane => y,
            DomainSpec::Strip { half_width } => half_width - y.abs(),
            DomainSpec::Annulus { outer_radius } => (outer_radius - w.norm()).min(w.norm() - 1.0 / outer_radius),
            DomainSpec::Cusp { eps } => cusp_boundary_distance(*eps, w),
            DomainSpec::SlitRectangle { eps, n_slits } => {
                let s = slit_total_width(*eps);
                let mut d = x.min(s - x).min(SLIT_HALF_HEIGHT - y.abs());
                for (a, b) in slit_segments(*eps, *n_slits) {
                    if (a.re - x).abs() < d {
                        d = d.min(segment_distance(w, a, b));
                    }
                }
                d
            }
            DomainSpec::Channel { x_max, widths } => channel_boundary_distance(*x_max, widths, w),
            DomainSpec::ChainOfAnnuli { n, .. } => chain_boundary_distance(&chain_layout(*n), w),
        })
    }

    /// Exact density for the model domains, otherwise the two-sided bound
    /// `1/(2δ) ≤ λ ≤ 2/δ` from the boundary distance `δ`.
    pub fn density(&self, w: ComplexPoint) -> Result<DensityEstimate> {
        match self {
            DomainSpec::UnitDisc => density_disc(w),
            DomainSpec::HalfPlane => density_halfplane(w),
            DomainSpec::Strip { half_width } => density_strip(*half_width, w),
            DomainSpec::Annulus { outer_radius } => density_annulus(*outer_radius, w),
            DomainSpec::ChainOfAnnuli { .. } => Err(HypError::Configuration(
                "no density evaluator for the chain of annuli".into(),
            )),
            _ => DensityEstimate::from_boundary_distance(self.boundary_distance(w)?),
        }
    }

    /// Length `m(t)` of the intersection of the domain with the vertical
    /// line `x = t`, for the domains symmetric about the real axis whose
    /// sections are single intervals.
    pub fn cross_section(&self, t: f64) -> Result<f64> {
        match self {
            DomainSpec::UnitDisc => Ok(if t.abs() < 1.0 { 2.0 * (1.0 - t * t).sqrt() } else { 0.0 }),
            DomainSpec::Strip { half_width } => Ok(2.0 * half_width),
            DomainSpec::Cusp { eps } => Ok(if t > 1.0 { 2.0 * t.powf(-(1.0 + eps)) } else { 0.0 }),
            DomainSpec::Channel { x_max, widths } => {
                let disc = if t.abs() < 1.0 { (1.0 - t * t).sqrt() } else { 0.0 };
                let chan = if t > 0.0 && t < *x_max { interpolate(widths, *x_max, t) } else { 0.0 };
                // both sections are centered on the axis, so the union is the longer one
                Ok(2.0 * disc.max(chan))
            }
            other => Err(HypError::Configuration(format!(
                "cross-section not available for {}",
                other.label()
            ))),
        }
    }

    /// Euclidean area; infinite for unbounded domains of infinite area.
    pub fn area(&self) -> f64 {
        match self {
            DomainSpec::UnitDisc => PI,
            DomainSpec::HalfPlane | DomainSpec::Strip { .. } => f64::INFINITY,
            DomainSpec::Annulus { outer_radius } => PI * (outer_radius.powi(2) - outer_radius.powi(-2)),
            DomainSpec::Cusp { eps } => 2.0 / eps,
            DomainSpec::SlitRectangle { eps, .. } => 2.0 * SLIT_HALF_HEIGHT * slit_total_width(*eps),
            DomainSpec::Channel { x_max, widths } => {
                // the section width is piecewise smooth; fine trapezoid on both pieces
                let m = |t: f64| self.cross_section(t).unwrap_or(0.0);
                let disc_part = crate::quadrature::Quadrature::new(1e-12)
                    .integrate(m, -1.0, 0.0)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let steps = 64 * widths.len();
                let h = x_max / steps as f64;
                let body: f64 = (0..steps).map(|i| m((i as f64 + 0.5) * h) * h).sum();
                disc_part + body
            }
            DomainSpec::ChainOfAnnuli { n, .. } => chain_layout(*n).iter().map(|a| 3.75 * PI * a.r * a.r).sum(),
        }
    }
}

fn interpolate(values: &[f64], x_max: f64, x: f64) -> f64 {
    let n = values.len() - 1;
    let pos = (x / x_max * n as f64).clamp(0.0, n as f64);
    let i = (pos.floor() as usize).min(n - 1);
    let frac = pos - i as f64;
    values[i] * (1.0 - frac) + values[i + 1] * frac
}

// ---------- cusp ----------

fn cusp_curve_distance(p: f64, w: ComplexPoint, upper_bound: f64) -> f64 {
    // distance from w to {(x, x^{-p}) : x ≥ 1}
    let sq = |x: f64| {
        let dy = x.powf(-p) - w.im;
        (x - w.re).powi(2) + dy * dy
    };
    let lo = (w.re - upper_bound).max(1.0);
    let hi = (w.re + upper_bound).max(lo);
    let n = 64;
    let step = (hi - lo) / n as f64;
    let mut best = (sq(lo), lo);
    for i in 1..=n {
        let x = lo + step * i as f64;
        let v = sq(x);
        if v < best.0 {
            best = (v, x);
        }
    }
    let (a, b) = ((best.1 - step).max(lo), (best.1 + step).min(hi));
    let x = golden_min(sq, a, b, 1e-15);
    best.0.min(sq(x)).sqrt()
}

fn cusp_boundary_distance(eps: f64, w: ComplexPoint) -> f64 {
    let p = 1.0 + eps;
    let edge = segment_distance(w, c(1.0, -1.0), c(1.0, 1.0));
    let vertical = w.re.powf(-p) - w.im.abs();
    let bound = edge.min(vertical);
    let mirrored = c(w.re, w.im.abs());
    // the nearer of the two curves is the one on the same side of the axis
    edge.min(cusp_curve_distance(p, mirrored, bound))
}

/// Minimizer of a unimodal function on `[a, b]` by golden-section search.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

// ---------- slit rectangle ----------

/// `a_n = n^{−(1+ε)}`
pub fn slit_gap(eps: f64, n: usize) -> f64 {
    (n as f64).powf(-(1.0 + eps))
}

/// `s_1, …, s_n`
pub fn slit_positions(eps: f64, n: usize) -> Vec<f64> {
    let mut s = 0.0;
    (1..=n)
        .map(|k| {
            s += slit_gap(eps, k);
            s
        })
        .collect()
}

/// `s = Σ_{n≥1} n^{−(1+ε)}`, by a direct sum plus an Euler–Maclaurin tail.
pub fn slit_total_width(eps: f64) -> f64 {
    let p = 1.0 + eps;
    let big_n = 200usize;
    let head: f64 = (1..big_n).map(|k| (k as f64).powf(-p)).sum();
    let n = big_n as f64;
    let f = n.powf(-p);
    let integral = n.powf(1.0 - p) / (p - 1.0);
    let d1 = -p * n.powf(-p - 1.0);
    let d3 = -p * (p + 1.0) * (p + 2.0) * n.powf(-p - 3.0);
    head + integral + 0.5 * f - d1 / 12.0 + d3 / 720.0
}

/// Slit endpoints `(bottom, top)` for `S_1..S_n`.
pub fn slit_segments(eps: f64, n: usize) -> Vec<(ComplexPoint, ComplexPoint)> {
    slit_positions(eps, n)
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if (i + 1) % 2 == 1 {
                (c(x, -SLIT_HALF_HEIGHT), c(x, 0.5))
            } else {
                (c(x, -0.5), c(x, SLIT_HALF_HEIGHT))
            }
        })
        .collect()
}

/// `w_0 = 1/2` and the midpoints `w_1..w_n` of the real gaps `L_k` between
/// consecutive slits `S_k` and `S_{k+1}`.
pub fn slit_rectangle_waypoints(eps: f64, n: usize) -> Vec<ComplexPoint> {
    let s = slit_positions(eps, n + 1);
    let mut out = vec![c(0.5, 0.0)];
    out.extend((1..=n).map(|k| c(0.5 * (s[k - 1] + s[k]), 0.0)));
    out
}

/// The clearance `d_k = a_{k+2}/2` of `Γ_k` from the boundary.
pub fn gamma_clearance(eps: f64, k: usize) -> f64 {
    0.5 * slit_gap(eps, k + 2)
}

/// `Γ_k` from `w_k` to `w_{k+1}`: a unit vertical step, a horizontal run
/// past the slit `S_{k+1}`, and a unit vertical step back to the axis.
/// The path goes over `S_{k+1}` when that slit rises from the bottom
/// (`k` even) and under it otherwise.
pub fn gamma_path(eps: f64, k: usize) -> Result<Curve> {
    if !(eps > 0.0) {
        return domain_err(format!("eps = {eps} must be positive"));
    }
    let w = slit_rectangle_waypoints(eps, k + 1);
    let (a, b) = (w[k], w[k + 1]);
    let lift = if k % 2 == 0 { c(0.0, 1.0) } else { c(0.0, -1.0) };
    let vertices = vec![a, a + lift, b + lift, b];
    for (p, q) in vertices.windows(2).map(|v| (v[0], v[1])) {
        for (s0, s1) in slit_segments(eps, k + 3) {
            if segments_intersect(p, q, s0, s1) {
                return Err(HypError::Construction(format!("path for k = {k} meets the slit at x = {}", s0.re)));
            }
        }
    }
    Curve::polyline(vertices)
}

fn cross(o: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> f64 {
    ((a - o).conj() * (b - o)).im
}

/// Closed-segment intersection test.
pub fn segments_intersect(p1: ComplexPoint, p2: ComplexPoint, q1: ComplexPoint, q2: ComplexPoint) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: ComplexPoint, b: ComplexPoint, p: ComplexPoint, d: f64| {
        d == 0.0 && p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

// ---------- channel ----------

/// Part of `[a, b]` outside the open unit disc, as up to two segments.
fn outside_disc_parts(a: ComplexPoint, b: ComplexPoint) -> Vec<(ComplexPoint, ComplexPoint)> {
    let d = b - a;
    let (qa, qb, qc) = (d.norm_sqr(), 2.0 * (a.conj() * d).re, a.norm_sqr() - 1.0);
    let disc = qb * qb - 4.0 * qa * qc;
    if qa == 0.0 || disc <= 0.0 {
        return vec![(a, b)];
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / (2.0 * qa)).clamp(0.0, 1.0);
    let t1 = ((-qb + sq) / (2.0 * qa)).clamp(0.0, 1.0);
    let mut out = Vec::new();
    if t0 > 0.0 {
        out.push((a, a + d * t0));
    }
    if t1 < 1.0 {
        out.push((a + d * t1, b));
    }
    out
}

fn channel_boundary_distance(x_max: f64, widths: &[f64], w: ComplexPoint) -> f64 {
    let n = widths.len() - 1;
    let dx = x_max / n as f64;
    let wall = |a: ComplexPoint, b: ComplexPoint| {
        outside_disc_parts(a, b)
            .into_iter()
            .map(|(p, q)| segment_distance(w, p, q))
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = wall(c(x_max, -widths[n]), c(x_max, widths[n]));
    for i in 0..n {
        let (x0, x1) = (dx * i as f64, dx * (i + 1) as f64);
        if (x0 - w.re).max(w.re - x1) > best {
            continue;
        }
        best = best
            .min(wall(c(x0, widths[i]), c(x1, widths[i + 1])))
            .min(wall(c(x0, -widths[i]), c(x1, -widths[i + 1])));
    }
    // the unit circle, where the channel does not cover it
    let r = w.norm();
    let foot = if r > 0.0 { w / r } else { c(-1.0, 0.0) };
    let covered = foot.re > 0.0 && foot.im.abs() < interpolate(widths, x_max, foot.re);
    if !covered {
        best = best.min((1.0 - r).abs());
    }
    best
}

// ---------- chain of annuli ----------

/// One annulus `{r/2 < |z − center| < 2r}` of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainAnnulus {
    pub center: ComplexPoint,
    pub r: f64,
}

impl ChainAnnulus {
    pub fn contains(&self, w: ComplexPoint) -> bool {
        let d = (w - self.center).norm();
        d > 0.5 * self.r && d < 2.0 * self.r
    }
}

/// Centers `c_1 = 0`, `c_{k+1} = c_k + 3(r_k + r_{k+1})/2`: consecutive
/// annuli overlap, non-consecutive ones are disjoint, and every hole stays
/// uncovered.
pub fn chain_layout(n: usize) -> Vec<ChainAnnulus> {
    let mut out = Vec::with_capacity(n);
    let mut x = 0.0;
    for k in 1..=n {
        let r = 1.0 / k as f64;
        if k > 1 {
            x += 1.5 * (1.0 / (k - 1) as f64 + r);
        }
        out.push(ChainAnnulus { center: c(x, 0.0), r });
    }
    out
}

fn circle_intersections(c0: ComplexPoint, r0: f64, c1: ComplexPoint, r1: f64) -> Vec<ComplexPoint> {
    let d = (c1 - c0).norm();
    if d == 0.0 || d > r0 + r1 || d < (r0 - r1).abs() {
        return Vec::new();
    }
    let a = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
    let h = (r0 * r0 - a * a).max(0.0).sqrt();
    let u = (c1 - c0) / d;
    let base = c0 + u * a;
    let perp = u * c(0.0, 1.0);
    vec![base + perp * h, base - perp * h]
}

fn chain_boundary_distance(layout: &[ChainAnnulus], w: ComplexPoint) -> f64 {
    // The nearest boundary point of a union of annuli is either the nearest
    // point of some circle, if no annulus covers it, or an intersection of
    // two circles. Only annuli near `w` can matter.
    let near: Vec<usize> = (0..layout.len())
        .filter(|&i| (w - layout[i].center).norm() < 8.0 * layout[i].r)
        .collect();
    let covered = |p: ComplexPoint| near.iter().any(|&i| layout[i].contains(p));
    let mut best = f64::INFINITY;
    let mut circles = Vec::new();
    for &i in &near {
        circles.push((layout[i].center, 0.5 * layout[i].r));
        circles.push((layout[i].center, 2.0 * layout[i].r));
    }
    for &(cc, rr) in &circles {
        let v = w - cc;
        let foot = if v.norm() > 0.0 { cc + v / v.norm() * rr } else { cc + rr };
        if !covered(foot) {
            best = best.min((w - foot).norm());
        }
    }
    for (i, &(c0, r0)) in circles.iter().enumerate() {
        for &(c1, r1) in &circles[i + 1..] {
            for p in circle_intersections(c0, r0, c1, r1) {
                if !covered(p) {
                    best = best.min((w - p).norm());
                }
            }
        }
    }
    best
}

/// Number of windings `⌊k^β⌋` around the `k`-th annulus.
pub fn chain_windings(beta: f64, k: usize) -> f64 {
    (k as f64).powf(beta).floor()
}

/// Length of the core circle of `{r/2 < |z| < 2r}` in its own hyperbolic
/// metric, `2π²/log 4`, independent of `r`.
pub fn chain_core_geodesic_length() -> f64 {
    2.0 * PI * density_annulus(2.0, c(1.0, 0.0)).map(|d| d.lower).unwrap_or(f64::NAN)
}

/// `(E_N, ℓ_N coarse, ℓ_N exact)` for the chain geodesic after it leaves
/// `A_N`: `E_N = Σ (n_k + ½) 2π r_k`, the coarse length uses the density
/// estimate `2/r_k` (so `4π` per winding), the exact one the core-circle
/// length `2π²/log 4` per winding.
pub fn chain_annuli_lengths(beta: f64, n: usize) -> Result<(f64, f64, f64)> {
    if !(beta > 0.0 && beta.is_finite()) || n == 0 {
        return domain_err(format!("chain needs beta > 0 and n >= 1, got {beta}, {n}"));
    }
    let mut e = 0.0;
    let mut windings = 0.0;
    for k in 1..=n {
        let turns = chain_windings(beta, k) + 0.5;
        e += turns * 2.0 * PI / k as f64;
        windings += turns;
    }
    let coarse = windings * 4.0 * PI;
    let exact = windings * chain_core_geodesic_length();
    if !(e.is_finite() && coarse.is_finite() && exact.is_finite()) {
        return Err(HypError::Range(format!("chain lengths overflow for beta = {beta}, n = {n}")));
    }
    Ok((e, coarse, exact))
}

// ---------- Stolz and lens regions ----------

/// `{z : ρ_𝔻(z, [0, e^{iθ})) < d}`, one end of a lens region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StolzRegion {
    pub theta: f64,
    pub d: f64,
}

impl StolzRegion {
    pub fn new(theta: f64, d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite() && theta.is_finite()) {
            return domain_err(format!("Stolz region needs d > 0, got {d}"));
        }
        Ok(Self { theta, d })
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        lens_membership(self.theta, self.d, z).unwrap_or(false)
    }
}

/// `true` iff `d ≤ c/(c + 2)`, which places the hyperbolic Stolz region of
/// width `d` inside any Euclidean region `S` with `dist(r, ∂S) ≥ c(1 − r)`.
pub fn stolz_contains_euclidean(c: f64, d: f64) -> bool {
    c > 0.0 && d > 0.0 && d <= c / (c + 2.0)
}

/// Hyperbolic distance from `z` to the ray `[0, e^{iθ})`.
///
/// Along the ray, parametrized by hyperbolic arc length `s`, the distance
/// to a fixed point is convex, so a coarse scan followed by golden-section
/// refinement finds the minimum.
pub fn distance_to_ray(theta: f64, z: ComplexPoint) -> Result<f64> {
    let z = ensure_in_disc(z)?;
    let dir = unit(theta);
    let dist = |s: f64| disc_distance(z, dir * (0.5 * s).tanh()).unwrap_or(f64::INFINITY);
    let s_max = 40.0;
    let n = 80;
    let mut best = (dist(0.0), 0usize);
    for i in 1..=n {
        let v = dist(s_max * i as f64 / n as f64);
        if v < best.0 {
            best = (v, i);
        }
    }
    let step = s_max / n as f64;
    let lo = (best.1 as f64 - 1.0).max(0.0) * step;
    let hi = (best.1 as f64 + 1.0).min(n as f64) * step;
    let s = golden_min(dist, lo, hi, 1e-14);
    Ok(best.0.min(dist(s)))
}

pub fn lens_membership(theta: f64, d: f64, z: ComplexPoint) -> Result<bool> {
    Ok(distance_to_ray(theta, z)? < d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn disc_distance_example() {
        assert_eq!(DomainSpec::UnitDisc.boundary_distance(c(0.0, 0.0)).unwrap(), 1.0);
        assert!(DomainSpec::UnitDisc.boundary_distance(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn slit_positions_and_waypoints() {
        let s = slit_positions(0.5, 2);
        assert_eq!(s[0], 1.0);
        assert_abs_diff_eq!(s[1], 1.0 + 2f64.powf(-1.5), epsilon = 1e-15);
        let w = slit_rectangle_waypoints(0.5, 3);
        assert_eq!(w[0], c(0.5, 0.0));
        assert_abs_diff_eq!(w[1].re, 0.5 * (s[0] + s[1]), epsilon = 1e-15);
        assert_eq!(w[1].im, 0.0);
    }

    #[test]
    fn total_width_matches_known_zeta_value() {
        // ζ(2) = π²/6
        assert_abs_diff_eq!(slit_total_width(1.0), PI * PI / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn waypoint_distance_is_half_gap() {
        let eps = 0.5;
        let spec = DomainSpec::SlitRectangle { eps, n_slits: 40 };
        let w = slit_rectangle_waypoints(eps, 10);
        for k in 1..=10 {
            let d = spec.boundary_distance(w[k]).unwrap();
            assert_abs_diff_eq!(d, 0.5 * slit_gap(eps, k + 1), epsilon = 1e-15);
        }
    }

    #[test]
    fn gamma_path_geometry() {
        for eps in [0.5, 1.0] {
            let spec = DomainSpec::SlitRectangle { eps, n_slits: 60 };
            for k in 0..=20 {
                let g = gamma_path(eps, k).unwrap();
                let expected = 2.0 + 0.5 * (slit_gap(eps, k + 1) + slit_gap(eps, k + 2));
                assert_abs_diff_eq!(g.euclidean_length(), expected, epsilon = 1e-13);
                assert!(g.euclidean_length() <= 2.0 + slit_gap(eps, k + 1));
                for (a, b) in g.segments() {
                    for i in 0..=50 {
                        let p = a + (b - a) * (i as f64 / 50.0);
                        let d = spec.boundary_distance(p).unwrap();
                        assert!(d >= gamma_clearance(eps, k) * (1.0 - 1e-12), "k={k} p={p} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn cusp_distance_on_axis() {
        let eps = 1.0;
        let spec = DomainSpec::Cusp { eps };
        for t in [2.0, 10.0, 100.0] {
            let d = spec.boundary_distance(c(t, 0.0)).unwrap();
            let vertical = t.powf(-(1.0 + eps));
            assert!(d <= vertical && d > 0.9 * vertical, "t={t} d={d}");
        }
        assert!(spec.boundary_distance(c(0.5, 0.0)).is_err());
    }

    #[test]
    fn stolz_containment_examples() {
        assert!(stolz_contains_euclidean(2.0, 0.5));
        assert!(!stolz_contains_euclidean(1.0, 0.5));
        assert!(stolz_contains_euclidean(0.3, 1e-9));
    }

    #[test]
    fn lens_examples() {
        assert!(lens_membership(0.3, 1e-3, unit(0.3) * 0.7).unwrap());
        assert!(lens_membership(0.0, 0.1, c(0.0, 1e-4)).unwrap());
        // against the full-geodesic formula sinh ρ = 2|y|/(1 − |z|²) when the foot is on the ray
        let z = c(0.2, 0.3);
        let closed = (2.0 * z.im / (1.0 - z.norm_sqr())).asinh();
        assert_abs_diff_eq!(distance_to_ray(0.0, z).unwrap(), closed, epsilon = 1e-10);
    }

    #[test]
    fn chain_first_term() {
        let (e, coarse, exact) = chain_annuli_lengths(1.0, 1).unwrap();
        assert_abs_diff_eq!(e, 3.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(coarse, 1.5 * 4.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(exact, 1.5 * 2.0 * PI * PI / 4f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn chain_layout_shape() {
        let spec = DomainSpec::ChainOfAnnuli { beta: 1.0, n: 5 };
        let layout = chain_layout(5);
        // a point on the middle circle of each annulus is inside
        for a in &layout {
            assert!(spec.contains(a.center + a.r));
            assert!(!spec.contains(a.center));
        }
        let p = layout[2].center + c(0.0, layout[2].r);
        let d = spec.boundary_distance(p).unwrap();
        assert_abs_diff_eq!(d, 0.5 * layout[2].r, epsilon = 1e-12);
    }

    #[test]
    fn channel_distance_examples() {
        let spec = DomainSpec::channel_from_fn(|x| 0.5 * (-x / 4.0).exp(), 8.0, 801).unwrap();
        assert_abs_diff_eq!(spec.boundary_distance(c(0.0, 0.0)).unwrap(), 1.0, epsilon = 1e-12);
        let d = spec.boundary_distance(c(4.0, 0.0)).unwrap();
        assert!(d <= 0.5 * (-1f64).exp() && d > 0.9 * 0.5 * (-1f64).exp());
        assert_eq!(spec.cross_section(0.0).unwrap(), 2.0);
        assert!(DomainSpec::channel_from_fn(|x| 2.0 - x, 3.0, 10).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let spec = DomainSpec::SlitRectangle { eps: 0.5, n_slits: 10 };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"slit_rectangle\""));
        assert_eq!(serde_json::from_str::<DomainSpec>(&json).unwrap(), spec);
    }
}
