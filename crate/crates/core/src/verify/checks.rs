//! The individual inequality checks. Each returns an [`InequalityReport`]
//! with `lhs ≤ rhs` as the claim; side conditions that fail mark the report
//! failed with a note.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::complex::{c, ensure_in_disc, unit, ComplexPoint};
use crate::domains::DomainSpec;
use crate::error::{domain_err, HypError, Result};
use crate::lengths::{ell, euclidean_length_radial, image_hyperbolic_length, lp_scale_norm, radial_lp_norm};
use crate::maps::{AnalyticMap, AnnulusCover};
use crate::metrics::{density_annulus, density_disc};
use crate::moebius::{disc_automorphism, MoebiusMap};
use crate::quadrature::{integrate_radial, Quadrature};
use crate::report::{InequalityReport, TOL_CLOSED_FORM, TOL_DOUBLE_QUADRATURE};
use crate::series::PowerSeriesFunction;

use super::fermi::fermi_integral;

/// Integrals out to the boundary stop at this hyperbolic length.
pub const ELL_CUTOFF: f64 = 40.0;

/// Maps whose image area (with multiplicity) is known in closed form.
pub trait FiniteArea: AnalyticMap {
    fn image_area(&self) -> Result<f64>;
}

impl FiniteArea for PowerSeriesFunction {
    fn image_area(&self) -> Result<f64> {
        Ok(self.area())
    }
}

impl FiniteArea for MoebiusMap {
    /// The image of the unit circle is a circle of radius
    /// `|ad − bc| / ||d|² − |c|²|` when the pole lies outside the closed disc.
    fn image_area(&self) -> Result<f64> {
        let gap = self.d.norm_sqr() - self.c.norm_sqr();
        if !(gap > 0.0) {
            return Err(HypError::Configuration("Möbius map has its pole in the closed disc".into()));
        }
        Ok(PI * (self.determinant().norm() / gap).powi(2))
    }
}

impl<F: FiniteArea + ?Sized> FiniteArea for &F {
    fn image_area(&self) -> Result<f64> {
        (**self).image_area()
    }
}

fn disc_lambda(z: ComplexPoint) -> Result<f64> {
    Ok(density_disc(z)?.lower)
}

/// `|f'(z)|/λ(z) ≤ √(A(f)/4π)`, with equality for the disc automorphisms.
pub fn check_lipschitz<F: FiniteArea>(f: &F, z: ComplexPoint) -> Result<InequalityReport> {
    let z = ensure_in_disc(z)?;
    let (_, d) = f.eval_deriv(z)?;
    let area = f.image_area()?;
    let lhs = d.norm() / disc_lambda(z)?;
    let rhs = (area / (4.0 * PI)).sqrt();
    Ok(InequalityReport::new("lipschitz", lhs, rhs, 1e-12)
        .param("area", area)
        .param("z_re", z.re)
        .param("z_im", z.im))
}

/// `E(r, 0)² ≤ (A(f)/π) ℓ(r)`
pub fn check_invariant_length<F: FiniteArea>(f: &F, r: f64) -> Result<InequalityReport> {
    let e = euclidean_length_radial(f, r, 0.0, 1e-13)?;
    let area = f.image_area()?;
    let l = ell(r)?;
    Ok(InequalityReport::new("invariant_length", e * e, area / PI * l, TOL_CLOSED_FORM)
        .param("r", r)
        .param("E", e)
        .param("ell", l)
        .param("area", area))
}

/// Ray along the positive real axis used for each finite-area domain: the
/// start point and the largest admissible end point.
fn ray_extent(domain: &DomainSpec) -> Result<(f64, f64)> {
    match domain {
        DomainSpec::Cusp { .. } => Ok((2.0, f64::INFINITY)),
        DomainSpec::Channel { x_max, .. } => Ok((0.0, *x_max)),
        other if !other.area().is_finite() => Err(HypError::Configuration(format!(
            "the {} domain has infinite area",
            other.label()
        ))),
        other => Err(HypError::Configuration(format!(
            "no real ray is set up for the {} domain",
            other.label()
        ))),
    }
}

/// Along the real ray `[t0, r]` of a finite-area domain with vertical
/// sections of length `m`:
/// `E(r)² ≤ (∫ m)·H(r)` and `E(r) ≤ (c − t0) + (∫_c^r m)^{1/2} H(r)^{1/2}`,
/// with `H(r) ≥ ∫ 1/m` standing in for the hyperbolic length, `c` the
/// midpoint of the ray. The tail `∫_c^∞ m` must decrease along the ladder
/// of `r`, and so must `E/√H` over the last half of it.
pub fn check_ray_in_finite_area(domain: &DomainSpec, r_values: &[f64]) -> Result<InequalityReport> {
    let (t0, t_max) = ray_extent(domain)?;
    let area = domain.area();
    if !area.is_finite() {
        return Err(HypError::Configuration(format!("the {} domain has infinite area", domain.label())));
    }
    let mut rs: Vec<f64> = r_values.to_vec();
    rs.sort_by(f64::total_cmp);
    if rs.is_empty() || rs[0] <= t0 || *rs.last().unwrap() >= t_max {
        return domain_err(format!("ray points must lie in ({t0}, {t_max})"));
    }
    let m = |t: f64| domain.cross_section(t).unwrap_or(f64::NAN);
    let quad = Quadrature::new(1e-12).with_rel_tol(1e-12).with_max_panels(20_000);
    let int_m = |a: f64, b: f64| quad.integrate(m, a, b).map(|v| v.value);
    let int_inv_m = |a: f64, b: f64| quad.integrate(|t| 1.0 / m(t), a, b).map(|v| v.value);
    // ∫ m over the part of the domain to the right of t0
    let right_area = match domain {
        DomainSpec::Cusp { eps } => 2.0 * t0.powf(-eps) / eps,
        DomainSpec::Channel { x_max, .. } => int_m(t0, *x_max)?,
        _ => unreachable!("ray_extent admits only cusps and channels"),
    };

    let mut parts = Vec::new();
    let mut tails = Vec::new();
    let mut ratios = Vec::new();
    for &r in &rs {
        let e = r - t0;
        let h = int_inv_m(t0, r)?;
        let mass = int_m(t0, r)?;
        let cut = 0.5 * (t0 + r);
        let mass_tail = int_m(cut, r)?;
        let whole = InequalityReport::new("ray_cauchy_schwarz", e * e, mass * h, TOL_CLOSED_FORM);
        let tail = InequalityReport::new("ray_tail", e, (cut - t0) + (mass_tail * h).sqrt(), TOL_CLOSED_FORM);
        for rep in [whole, tail] {
            parts.push(rep.param("r", r).param("E", e).param("H_lower", h));
        }
        tails.push(right_area - mass);
        ratios.push(e / h.sqrt());
    }
    let tails_decrease = tails.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let half = ratios.len() / 2;
    let ratios_decrease = ratios[half..].windows(2).all(|w| w[1] < w[0]);
    let mut rep = InequalityReport::combine("ray_in_finite_area", &parts)
        .param("area", area)
        .param("t0", t0)
        .param("last_tail", *tails.last().unwrap())
        .param("last_ratio", *ratios.last().unwrap());
    if !tails_decrease {
        rep = rep.fail("the area tail does not decrease along the ray");
    }
    if !ratios_decrease {
        rep = rep.fail("E/sqrt(H) does not decrease over the tail of the ray");
    }
    Ok(rep)
}

/// The automorphism `φ` with `φ(z0) = 0` and `φ(z1) > 0`, returned as its
/// inverse together with `ρ(z0, z1)`.
fn straighten(z0: ComplexPoint, z1: ComplexPoint) -> Result<(MoebiusMap, f64)> {
    let phi = disc_automorphism(z0)?;
    let w = phi.apply(ensure_in_disc(z1)?)?;
    let turn = if w.norm() > 0.0 { w.conj() / w.norm() } else { c(1.0, 0.0) };
    let rotate = MoebiusMap { a: turn, b: c(0.0, 0.0), c: c(0.0, 0.0), d: c(1.0, 0.0) };
    let rho = crate::metrics::disc_distance(z0, z1)?;
    Ok((rotate.compose(&phi).inverse(), rho))
}

/// `E(f([z0, z1])) ≤ (A(f(Ω))/(π d_E))^{1/2} ρ(z0, z1)^{1/2}` with
/// `Ω = {ρ(z, [z0, z1]) < d}` and `d_E = tanh(d/2)`. Both the image length
/// and the image area are integrated in Fermi coordinates about the segment.
pub fn check_neighborhood<F: AnalyticMap>(f: &F, z0: ComplexPoint, z1: ComplexPoint, d: f64) -> Result<InequalityReport> {
    if !(d > 0.0 && d.is_finite()) {
        return domain_err(format!("neighborhood width {d} must be positive"));
    }
    let (back, rho) = straighten(z0, z1)?;
    let d_e = (0.5 * d).tanh();
    // (|f'|/λ)(ψ(u)) |ψ'(u)| λ(ψ(u)) / λ(u) = |f'(ψ(u))| |ψ'(u)| (1 − |u|²)/2
    let scale = |u: ComplexPoint, gap: f64| -> f64 {
        match (back.apply(u), back.derivative(u)) {
            (Ok(z), Ok(dz)) => match f.eval_deriv(z) {
                Ok((_, fd)) => fd.norm() * dz.norm() * 0.5 * gap,
                Err(_) => f64::NAN,
            },
            _ => f64::NAN,
        }
    };
    let quad = Quadrature::new(1e-13).with_rel_tol(1e-12);
    let length = quad
        .integrate(
            |s| {
                let t = (0.5 * s).tanh();
                let gap = 1.0 / (0.5 * s).cosh().powi(2);
                scale(c(t, 0.0), gap)
            },
            0.0,
            rho,
        )?
        .value;
    let area = if rho > 0.0 {
        fermi_integral(|u, gap| scale(u, gap).powi(2), Some(rho), d, 1e-10)?
    } else {
        0.0
    };
    let rhs = (area / (PI * d_e)).sqrt() * rho.sqrt();
    if !(length.is_finite() && area.is_finite()) {
        return Err(HypError::Range("the neighborhood leaves the disc numerically".into()));
    }
    Ok(InequalityReport::new("neighborhood", length, rhs, TOL_DOUBLE_QUADRATURE)
        .param("d", d)
        .param("d_E", d_e)
        .param("rho", rho)
        .param("area", area))
}

/// Samples used to certify omission and univalence.
const BOUNDARY_SAMPLES: usize = 4096;

/// Winding number of `f(∂𝔻)` about `w`; `f` must be analytic on the closed disc.
fn winding_number(f: &PowerSeriesFunction, w: ComplexPoint) -> Result<(i64, f64)> {
    let mut total = 0.0;
    let mut closest = f64::INFINITY;
    let mut prev = f.eval_deriv_unchecked(c(1.0, 0.0)).0 - w;
    for k in 1..=BOUNDARY_SAMPLES {
        let z = unit(2.0 * PI * k as f64 / BOUNDARY_SAMPLES as f64);
        let cur = f.eval_deriv_unchecked(z).0 - w;
        closest = closest.min(cur.norm());
        total += (cur / prev).arg();
        prev = cur;
    }
    if closest == 0.0 {
        return Err(HypError::Configuration(format!("{w} lies on the image of the circle")));
    }
    Ok(((total / (2.0 * PI)).round() as i64, closest))
}

/// Pairwise distinctness and a nonvanishing derivative on a polar sample of
/// `{|z| ≤ 0.99}`. Returns the smallest difference quotient.
fn sampled_univalence(f: &PowerSeriesFunction) -> Result<f64> {
    let mut pts = vec![c(0.0, 0.0)];
    for i in 1..=24 {
        let rho = 0.99 * i as f64 / 24.0;
        let m = 8 * i;
        pts.extend((0..m).map(|k| ComplexPoint::from_polar(rho, 2.0 * PI * (k as f64 + 0.5 * (i % 2) as f64) / m as f64)));
    }
    let vals: Vec<(ComplexPoint, ComplexPoint)> = pts.iter().map(|&z| f.eval_deriv_unchecked(z)).collect();
    let mut quotient = vals.iter().map(|v| v.1.norm()).fold(f64::INFINITY, f64::min);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            quotient = quotient.min((vals[i].0 - vals[j].0).norm() / (pts[i] - pts[j]).norm());
        }
    }
    if !(quotient > 1e-12) {
        return Err(HypError::Configuration("the map is not univalent on the sample".into()));
    }
    Ok(quotient)
}

/// `e^{2d}/√tanh(d/2)` with `d = ½`.
pub fn omitted_point_constant() -> f64 {
    let d: f64 = 0.5;
    (2.0 * d).exp() / (0.5 * d).tanh().sqrt()
}

/// For `f` univalent on the disc and omitting `w`:
/// (a) `½ |log(|f(re^{iθ}) − w| / |f(0) − w|)| ≤ ρ_{f(𝔻)}(f(0), f(re^{iθ})) = ℓ(r)`;
/// (b) `E(r, θ) ≤ C sup_{t ≤ r} |f(te^{iθ}) − w| ℓ(r)^{1/2}`.
///
/// The distance in (a) is the pullback of the disc density along `[0, r]`;
/// an upper estimate from `2/dist` along the image is recorded beside it.
pub fn check_omitted_point(f: &PowerSeriesFunction, w: ComplexPoint, r: f64, theta: f64) -> Result<InequalityReport> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("radius {r} not in [0, 1)"));
    }
    let (winding, clearance) = winding_number(f, w)?;
    if winding != 0 {
        return Err(HypError::Configuration(format!("{w} is covered {winding} times by the image")));
    }
    let quotient = sampled_univalence(f)?;
    let dir = unit(theta);
    let (w1, w2) = (f.eval_deriv_unchecked(c(0.0, 0.0)).0, f.eval_deriv_unchecked(dir * r).0);
    let lemma_lhs = 0.5 * ((w2 - w).norm() / (w1 - w).norm()).ln().abs();
    let quad = Quadrature::new(1e-13).with_rel_tol(1e-13);
    let rho = integrate_radial(|t, s| 2.0 / (s * (1.0 + t)), r, &quad)?.value;
    // boundary of f(𝔻) sampled as f(∂𝔻); the image of the ray stays inside
    let boundary: Vec<ComplexPoint> = (0..BOUNDARY_SAMPLES)
        .map(|k| f.eval_deriv_unchecked(unit(2.0 * PI * k as f64 / BOUNDARY_SAMPLES as f64)).0)
        .collect();
    let dist = |p: ComplexPoint| boundary.iter().map(|b| (b - p).norm()).fold(f64::INFINITY, f64::min);
    let rho_upper = integrate_radial(
        |t, _| {
            let (v, d) = f.eval_deriv_unchecked(dir * t);
            2.0 * d.norm() / dist(v)
        },
        r,
        &Quadrature::new(1e-8).with_rel_tol(1e-8),
    )?
    .value;
    let lemma = InequalityReport::new("omitted_point_distance", lemma_lhs, rho, TOL_CLOSED_FORM)
        .param("rho_upper_estimate", rho_upper);

    let e = euclidean_length_radial(f, r, theta, 1e-13)?;
    let sup = sup_distance_on_ray(f, w, dir, r);
    let k = omitted_point_constant();
    let l = ell(r)?;
    let bound = InequalityReport::new("omitted_point_growth", e, k * sup * l.sqrt(), TOL_CLOSED_FORM)
        .param("sup_distance", sup)
        .param("constant", k);
    Ok(InequalityReport::combine("omitted_point", &[lemma, bound])
        .param("r", r)
        .param("theta", theta)
        .param("winding_number", winding as f64)
        .param("boundary_clearance", clearance)
        .param("min_difference_quotient", quotient))
}

/// `sup_{t ≤ r} |f(te^{iθ}) − w|` from a fine sample refined by
/// golden-section search around the best node.
fn sup_distance_on_ray(f: &PowerSeriesFunction, w: ComplexPoint, dir: ComplexPoint, r: f64) -> f64 {
    let g = |t: f64| -(f.eval_deriv_unchecked(dir * t).0 - w).norm();
    let n = 2048;
    let (mut best, mut at) = (g(0.0), 0usize);
    for i in 1..=n {
        let v = g(r * i as f64 / n as f64);
        if v < best {
            best = v;
            at = i;
        }
    }
    let lo = r * at.saturating_sub(1) as f64 / n as f64;
    let hi = r * (at + 1).min(n) as f64 / n as f64;
    let t = crate::domains::golden_min(g, lo, hi, 1e-15);
    -best.min(g(t))
}

/// `β(d) = 5 d e^d / (π sinh²(d/2))`
pub fn mz_constant(d: f64) -> f64 {
    5.0 * d * d.exp() / (PI * (0.5 * d).sinh().powi(2))
}

/// Integrals along radii stop at `1 − MZ_GAP`.
const MZ_GAP: f64 = 1e-6;

/// `∫_0^{1−δ} (|f'|/λ)² λ dr ≤ β(d) area(f(Σ_d))` on the ray at angle `θ`,
/// with `Σ_d` the hyperbolic Stolz region of width `d` about `[0, e^{iθ})`.
/// The Euclidean weight `(1 − r)` must sandwich the hyperbolic one:
/// `(1 − r)/2 ≤ (1 − r²)/2 ≤ (1 − r)`.
pub fn check_mz(f: &PowerSeriesFunction, d: f64, theta: f64) -> Result<InequalityReport> {
    if !(d > 0.0 && d.is_finite()) {
        return domain_err(format!("Stolz width {d} must be positive"));
    }
    let dir = unit(theta);
    let quad = Quadrature::new(1e-13).with_rel_tol(1e-12);
    let fd2 = |t: f64| f.eval_deriv_unchecked(dir * t).1.norm_sqr();
    let end = 1.0 - MZ_GAP;
    let lhs = integrate_radial(|t, s| fd2(t) * 0.5 * s * (1.0 + t), end, &quad)?.value;
    let euclid = integrate_radial(|t, s| fd2(t) * s, end, &quad)?.value;
    // beyond 1 − δ: |f'|² (1 − r) ≤ (Σ n|a_n|)² (1 − r)
    let sup_deriv: f64 = f.coeffs().iter().enumerate().map(|(n, a)| n as f64 * a.norm()).sum();
    let tail = sup_deriv * sup_deriv * MZ_GAP * MZ_GAP / 2.0;
    let area = fermi_integral(
        |u, gap| f.eval_deriv_unchecked(dir * u).1.norm_sqr() * (0.5 * gap).powi(2),
        None,
        d,
        1e-10,
    )?;
    let beta = mz_constant(d);
    let mut rep = InequalityReport::new("mz", lhs + tail, beta * area, TOL_DOUBLE_QUADRATURE)
        .param("d", d)
        .param("theta", theta)
        .param("beta", beta)
        .param("stolz_area", area)
        .param("euclidean_form", euclid)
        .param("truncation_gap", MZ_GAP)
        .param("tail_bound", tail)
        .note(format!("radial integrals stop at r = 1 - {MZ_GAP:e}"));
    let slack = 1e-12 * (1.0 + euclid);
    if !(0.5 * euclid <= lhs + slack && lhs <= euclid + slack) {
        rep = rep.fail("the hyperbolic and Euclidean weights do not sandwich each other");
    }
    Ok(rep)
}

/// `E(ℓ)` and `∫_0^L (E/ℓ)^p dℓ`, integrating `dE/dℓ = |f'(r)| (1 − r²)/2`
/// panel by panel in `ℓ`, with `r = tanh(ℓ/2)`.
fn hardy_integral(f: &PowerSeriesFunction, p: f64, cutoff: f64) -> Result<f64> {
    let speed = |l: f64| {
        let r = (0.5 * l).tanh();
        f.eval_deriv_unchecked(c(r, 0.0)).1.norm() * 0.5 / (0.5 * l).cosh().powi(2)
    };
    panelwise_ratio_integral(speed, p, cutoff)
}

/// `∫_0^S (E/s)² ds`, with `s = log 1/(1 − r)`, `dE/ds = |f'(r)|(1 − r)`.
fn weighted_log_integral(f: &PowerSeriesFunction, cutoff: f64) -> Result<f64> {
    let speed = |s: f64| {
        let gap = (-s).exp();
        f.eval_deriv_unchecked(c(1.0 - gap, 0.0)).1.norm() * gap
    };
    panelwise_ratio_integral(speed, 2.0, cutoff)
}

/// `∫_0^X (E(x)/x)^p dx` where `E(x) = ∫_0^x speed`; unit panels carry
/// the running value of `E` from one to the next.
fn panelwise_ratio_integral<S: Fn(f64) -> f64>(speed: S, p: f64, cutoff: f64) -> Result<f64> {
    let quad = Quadrature::new(1e-14).with_rel_tol(1e-12);
    let failure = Cell::new(None);
    let mut acc = 0.0;
    let mut total = 0.0;
    let panels = cutoff.ceil() as usize;
    for k in 0..panels {
        let (a, b) = (k as f64, (k as f64 + 1.0).min(cutoff));
        let base = acc;
        let part = quad.integrate(
            |x| {
                if x == 0.0 {
                    // E(x)/x → E'(0) = speed(0)
                    return speed(0.0).powf(p);
                }
                match quad.integrate(&speed, a, x) {
                    Ok(v) => ((base + v.value) / x).powf(p),
                    Err(e) => {
                        let first = failure.take();
                        failure.set(first.or(Some(e)));
                        f64::NAN
                    }
                }
            },
            a,
            b,
        )?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        total += part.value;
        acc += quad.integrate(&speed, a, b)?.value;
    }
    Ok(total)
}

/// The three integral inequalities for `E` against `ℓ`:
/// (a) `∫ (dE/dℓ)^p dℓ ≤ (2^p/π) ‖f'/λ‖_p^p`;
/// (b) `(∫ (E/ℓ)^p dℓ)^{1/p} ≤ (2q/π^{1/p}) ‖f'/λ‖_p`;
/// (c) at `p = 2`, `∫_0^1 E²/((1 − r) log²(1/(1 − r))) dr ≤ (32/π) A(f)`.
///
/// The constant in (c) comes from Hardy's inequality in `s = log 1/(1 − r)`
/// followed by (a) at `p = 2`. The bound `A(f)/π` fails already for
/// `f(z) = z`, where the integral is `2 log 2`; its ratio is recorded.
/// Integrals stop at `ℓ = 40`; the tails are bounded using `E ≤ Σ n|a_n|`
/// and added to the left sides.
pub fn check_lp_growth(f: &PowerSeriesFunction, p: f64) -> Result<InequalityReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(HypError::Configuration(format!("p = {p} must exceed 1")));
    }
    let q = p / (p - 1.0);
    let norm = lp_scale_norm(f, p, 1e-10)?;
    if !norm.is_finite() {
        return Err(HypError::Configuration(format!("the scale norm diverges for p = {p}")));
    }
    let sup_deriv: f64 = f.coeffs().iter().enumerate().map(|(n, a)| n as f64 * a.norm()).sum();
    let e_max = sup_deriv;
    let cutoff = ELL_CUTOFF;

    let speed_integral = radial_lp_norm(f, p, 0.0, None)?.powf(p);
    let speed_tail = (2.0 * sup_deriv).powf(p) * (-p * cutoff).exp() / p;
    let a = InequalityReport::new("lp_speed", speed_integral + speed_tail, 2f64.powf(p) / PI * norm.powf(p), TOL_DOUBLE_QUADRATURE)
        .param("tail_bound", speed_tail);

    let hardy = hardy_integral(f, p, cutoff)?;
    let hardy_tail = e_max.powf(p) * cutoff.powf(1.0 - p) / (p - 1.0);
    let b = InequalityReport::new(
        "lp_hardy",
        (hardy + hardy_tail).powf(1.0 / p),
        2.0 * q / PI.powf(1.0 / p) * norm,
        TOL_DOUBLE_QUADRATURE,
    )
    .param("tail_bound", hardy_tail);

    let mut parts = vec![a, b];
    let mut log_ratio = None;
    if (p - 2.0).abs() < 1e-12 {
        let area = f.area();
        let s_cut = cutoff - 2f64.ln();
        let weighted = weighted_log_integral(f, s_cut)?;
        let tail = e_max * e_max / s_cut;
        let lhs = weighted + tail;
        log_ratio = Some(if area > 0.0 { lhs * PI / area } else { 0.0 });
        parts.push(
            InequalityReport::new("lp_log_weight", lhs, 32.0 / PI * area, TOL_DOUBLE_QUADRATURE)
                .param("tail_bound", tail)
                .param("ratio_to_area_over_pi", log_ratio.unwrap_or(0.0)),
        );
    }
    let mut rep = InequalityReport::combine("lp_growth", &parts)
        .param("p", p)
        .param("norm", norm)
        .param("ell_cutoff", cutoff)
        .note(format!("integrals truncated at ell = {cutoff}, tail bounds added"));
    if let Some(ratio) = log_ratio {
        rep = rep.param("ratio_to_area_over_pi", ratio);
    }
    Ok(rep)
}

/// `M` with the standard annulus inside `{|w| < M}`.
pub fn annulus_cover_radius() -> f64 {
    FRAC_PI_2.exp()
}

/// For the covering map of `e^{−π/2} < |w| < e^{π/2}`: `E(r) = ℓ(r)`,
/// `E(r) ≤ (M/2) ℓ(r)` and `E(r) ≥ K ℓ(r)` with `K = 1/max λ_A` on the unit
/// circle, which the real diameter covers.
pub fn check_covering_annulus(r_values: &[f64]) -> Result<InequalityReport> {
    let f = AnnulusCover::standard();
    let big_m = annulus_cover_radius();
    let lambda_max = (0..64)
        .map(|k| density_annulus(f.outer_radius(), unit(2.0 * PI * k as f64 / 64.0)).map(|d| d.upper))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let k = 1.0 / lambda_max;
    let mut parts = Vec::new();
    for &r in r_values {
        let e = euclidean_length_radial(&f, r, 0.0, 1e-10)?;
        let l = ell(r)?;
        parts.push(InequalityReport::new("annulus_identity", (e - l).abs(), 1e-8, 0.0).param("r", r).param("E", e));
        parts.push(InequalityReport::new("annulus_upper", e, 0.5 * big_m * l, TOL_CLOSED_FORM).param("r", r));
        parts.push(InequalityReport::new("annulus_lower", k * l, e, 1e-8).param("r", r));
    }
    Ok(InequalityReport::combine("covering_annulus", &parts).param("M", big_m).param("K", k))
}

/// `E(r) ≤ H(r)/μ` with `μ` the smallest lower density bound along the
/// sampled image of `[0, r]` and `H` integrated with the lower density.
pub fn check_bounded_hyperbolic<F: AnalyticMap>(f: &F, domain: &DomainSpec, r_values: &[f64]) -> Result<InequalityReport> {
    if !domain.is_bounded() {
        return Err(HypError::Configuration(format!("the {} domain is unbounded", domain.label())));
    }
    let mut parts = Vec::new();
    for &r in r_values {
        let lengths = image_hyperbolic_length(f, domain, r, 0.0, 1e-12)?;
        let samples = 512;
        let mut mu = f64::INFINITY;
        for i in 0..=samples {
            let w = f.eval(c(r * i as f64 / samples as f64, 0.0))?;
            mu = mu.min(domain.density(w)?.lower);
        }
        if !(mu > 0.0) {
            return Err(HypError::Configuration("the density has no positive lower bound on the image".into()));
        }
        parts.push(
            InequalityReport::new("bounded_hyperbolic", lengths.euclidean, lengths.hyperbolic_lower / mu, 1e-9)
                .param("r", r)
                .param("mu", mu)
                .param("H_lower", lengths.hyperbolic_lower)
                .param("H_upper", lengths.hyperbolic_upper),
        );
    }
    Ok(InequalityReport::combine("bounded_hyperbolic", &parts).param("domain_area", domain.area()))
}
