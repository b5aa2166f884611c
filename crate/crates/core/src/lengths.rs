//! Length functionals along radii: the Euclidean image length `E(r, θ)`,
//! the parameter length `ℓ(r)`, the image hyperbolic length `H(r)`, the
//! scale norms, the coefficient bound for `E`, and log-log growth fits.

use std::cell::Cell;
use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::complex::{unit, ComplexPoint};
use crate::domains::DomainSpec;
use crate::error::{domain_err, HypError, Result};
use crate::maps::AnalyticMap;
pub use crate::metrics::ell;
use crate::quadrature::{integrate_radial, integrate_radial_dyadic, periodic_mean, Quadrature};
use crate::series::PowerSeriesFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthReport {
    pub euclidean: f64,
    pub hyperbolic_lower: f64,
    pub hyperbolic_upper: f64,
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in `log E`.
    pub residual: f64,
    pub sample_count: usize,
    /// Decades spanned by the `ℓ` samples.
    pub decades: f64,
}

impl GrowthFit {
    /// Fits spanning fewer than two decades of `ℓ` are reported but not
    /// considered meaningful.
    pub fn is_meaningful(&self) -> bool {
        self.decades >= 2.0
    }
}

/// `E(r, θ) = ∫_0^r |f'(t e^{iθ})| dt`
pub fn euclidean_length_radial<F: AnalyticMap>(f: &F, r: f64, theta: f64, tol: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("radius {r} not in [0, 1)"));
    }
    let dir = unit(theta);
    let failure = Cell::new(None);
    let res = integrate_radial(
        |t, _| match f.eval_deriv(dir * t) {
            Ok((_, d)) => d.norm(),
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        r,
        &Quadrature::new(tol),
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(res?.value)
}

/// Hyperbolic length of `f([0, r e^{iθ}])` in `domain`, as a band from the
/// domain's density estimate (a single value when the density is exact).
pub fn image_hyperbolic_length<F: AnalyticMap>(
    f: &F,
    domain: &DomainSpec,
    r: f64,
    theta: f64,
    tol: f64,
) -> Result<LengthReport> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("radius {r} not in [0, 1)"));
    }
    let dir = unit(theta);
    let samples = 512;
    for i in 0..=samples {
        let t = r * i as f64 / samples as f64;
        let w = f.eval(dir * t)?;
        if !domain.contains(w) {
            return Err(HypError::Range(format!("image leaves the {} domain at t = {t}", domain.label())));
        }
    }
    let quad = Quadrature::new(tol);
    let offending = Cell::new(None::<f64>);
    let side = |upper: bool| {
        integrate_radial(
            |t, _| {
                let Ok((w, d)) = f.eval_deriv(dir * t) else {
                    offending.set(Some(t));
                    return f64::NAN;
                };
                match domain.density(w) {
                    Ok(est) => d.norm() * if upper { est.upper } else { est.lower },
                    Err(_) => {
                        if offending.get().is_none() {
                            offending.set(Some(t));
                        }
                        f64::NAN
                    }
                }
            },
            r,
            &quad,
        )
    };
    let lower = side(false);
    let upper = side(true);
    if let Some(t) = offending.get() {
        return Err(HypError::Range(format!("image leaves the {} domain at t = {t}", domain.label())));
    }
    let euclidean = euclidean_length_radial(f, r, theta, tol)?;
    Ok(LengthReport {
        euclidean,
        hyperbolic_lower: lower?.value,
        hyperbolic_upper: upper?.value,
        r,
        theta,
    })
}

/// Dyadic depth `u` (radius `1 − 2^{−u}`) at which radial integrals to the
/// boundary are cut off; `ℓ ≈ 40` there.
pub const BOUNDARY_DEPTH: f64 = 40.0 / LN_2;

/// `‖f'/λ_𝔻‖_p = (∬_𝔻 (|f'|/λ)^p λ² dx dy)^{1/p}`.
///
/// Polar quadrature with a trapezoid average over circles. The radial
/// integrand behaves like `(1 − ρ)^{p−2}` at the boundary; it is integrated
/// to the dyadic depth where the remaining tail, bounded using the
/// boundary mean of `|f'|^p`, drops below `tol`, and that tail estimate is
/// added.
pub fn lp_scale_norm(f: &PowerSeriesFunction, p: f64, tol: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(HypError::Divergence(format!("the scale norm diverges for p = {p} <= 1")));
    }
    let angular = |rho: f64| -> f64 {
        match periodic_mean(|phi| f.eval_deriv_unchecked(ComplexPoint::from_polar(rho, phi)).1.norm().powf(p), 1e-13, 1 << 16)
        {
            Ok(v) => v,
            // a zero of f' on the circle makes the integrand only C^{p}; the
            // trapezoid value at 2^16 nodes is still far inside the tolerance
            Err(HypError::BudgetExceeded { value, .. }) => value,
            Err(_) => f64::NAN,
        }
    };
    let boundary_mean = angular(1.0);
    if boundary_mean == 0.0 && angular(0.5) == 0.0 {
        return Ok(0.0);
    }
    // tail beyond 1 − 2^{−u}: ∫ 2π M (2/(2s))^{2−p} ds over s < 2^{−u}
    let tail_at = |u: f64| 2.0 * PI * boundary_mean * (-u * LN_2 * (p - 1.0)).exp() / (p - 1.0);
    let mut u_end = 8.0;
    while tail_at(u_end) > 0.01 * tol && u_end < 1000.0 {
        u_end *= 1.25;
    }
    let body = integrate_radial_dyadic(
        |t, s| {
            let lambda = 2.0 / (s * (1.0 + t));
            2.0 * PI * t * angular(t) * lambda.powf(2.0 - p)
        },
        u_end,
        &Quadrature::new(0.1 * tol).with_rel_tol(1e-12),
    )?;
    let total = body.value + tail_at(u_end);
    if !total.is_finite() {
        return Err(HypError::Divergence(format!("scale norm integral is not finite for p = {p}")));
    }
    Ok(total.powf(1.0 / p))
}

/// `(∫_0^r (|f'|/λ)^p λ dt)^{1/p}` along the ray at angle `θ`; `r = None`
/// integrates to the boundary. Divergence shows up as `+∞`.
pub fn radial_lp_norm(f: &PowerSeriesFunction, p: f64, theta: f64, r: Option<f64>) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return domain_err(format!("radial norm needs p >= 1, got {p}"));
    }
    let dir = unit(theta);
    let integrand = |t: f64, s: f64| {
        let scale = 0.5 * s * (1.0 + t);
        f.eval_deriv_unchecked(dir * t).1.norm().powf(p) * scale.powf(p - 1.0)
    };
    let quad = Quadrature::new(1e-12).with_rel_tol(1e-12);
    let v = match r {
        Some(r) => integrate_radial(integrand, r, &quad),
        None => integrate_radial_dyadic(integrand, BOUNDARY_DEPTH, &quad),
    };
    match v {
        Ok(v) => Ok(v.value.powf(1.0 / p)),
        Err(HypError::BudgetExceeded { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// `Σ_{n<N} |a_n| + (Σ_{n≥N} n|a_n|²)^{1/2} (log 1/(1 − r²))^{1/2}`, an
/// upper bound for `Σ_n |a_n| r^n ≥ E(r, θ)`.
pub fn keogh_bound(f: &PowerSeriesFunction, r: f64, split: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("radius {r} not in [0, 1)"));
    }
    if split == 0 || split > f.order() {
        return domain_err(format!("split index {split} must lie in 1..={}", f.order()));
    }
    let head: f64 = f.coeffs()[1..split].iter().map(|a| a.norm()).sum();
    let log_term = -(-r * r).ln_1p();
    Ok(head + (f.dirichlet_tail(split) * log_term).sqrt())
}

/// Least-squares line through `(log ℓ, log E)`.
pub fn fit_growth_exponent(samples: &[(f64, f64)]) -> Result<GrowthFit> {
    if samples.len() < 3 {
        return Err(HypError::Fit(format!("need at least 3 samples, got {}", samples.len())));
    }
    if samples.iter().any(|&(l, e)| !(l > 0.0 && e > 0.0 && l.is_finite() && e.is_finite())) {
        return Err(HypError::Fit("samples must be positive and finite".into()));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if !(sxx > 0.0) || hi - lo < 1e-12 * (1.0 + hi.abs()) {
        return Err(HypError::Fit("abscissae are degenerate".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(GrowthFit {
        exponent: slope,
        intercept,
        residual: (ss / n).sqrt(),
        sample_count: samples.len(),
        decades: (hi - lo) / std::f64::consts::LN_10,
    })
}
