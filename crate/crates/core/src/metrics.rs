//! Hyperbolic densities (exact for model domains, two-sided bounds from the
//! boundary distance otherwise), the disc distance, and the hyperbolic
//! mean-value property.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, ensure_in_disc, ComplexPoint};
use crate::domains::DomainSpec;
use crate::error::{domain_err, HypError, Result};
use crate::maps::AnalyticMap;
use crate::moebius::MoebiusMap;
use crate::quadrature::{periodic_mean, Quadrature};
use crate::report::{InequalityReport, TOL_CLOSED_FORM};
use crate::series::PowerSeriesFunction;

/// Hyperbolic density at a point, known exactly or up to a band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
}

impl DensityEstimate {
    pub fn exact(value: f64) -> Self {
        Self {
            lower: value,
            upper: value,
            exact: true,
        }
    }

    pub fn bounds(lower: f64, upper: f64) -> Self {
        debug_assert!(0.0 <= lower && lower <= upper);
        Self {
            lower,
            upper,
            exact: false,
        }
    }

    /// `1/(2δ) ≤ λ ≤ 2/δ` for a simply connected domain at distance `δ` from its boundary.
    pub fn from_boundary_distance(dist: f64) -> Result<Self> {
        if !(dist > 0.0) {
            return Err(HypError::Boundary);
        }
        Ok(Self::bounds(0.5 / dist, 2.0 / dist))
    }

    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.lower - tol <= value && value <= self.upper + tol
    }
}

/// `λ_𝔻(z) = 2/(1 − |z|²)`
pub fn density_disc(z: ComplexPoint) -> Result<DensityEstimate> {
    let z = ensure_in_disc(z)?;
    Ok(DensityEstimate::exact(disc_density_value(z)))
}

pub(crate) fn disc_density_value(z: ComplexPoint) -> f64 {
    let r = z.norm();
    2.0 / ((1.0 - r) * (1.0 + r))
}

/// `λ_ℍ(z) = 1/Im z`
pub fn density_halfplane(z: ComplexPoint) -> Result<DensityEstimate> {
    let z = ensure_finite(z)?;
    if z.im <= 0.0 {
        return domain_err(format!("{z} is not in the upper half-plane"));
    }
    Ok(DensityEstimate::exact(1.0 / z.im))
}

/// Strip `|Im z| < a`: `λ = (π/2a) / cos(π Im z / 2a)`.
pub fn density_strip(half_width: f64, z: ComplexPoint) -> Result<DensityEstimate> {
    let z = ensure_finite(z)?;
    if !(half_width > 0.0) || z.im.abs() >= half_width {
        return domain_err(format!("{z} is not in the strip |Im z| < {half_width}"));
    }
    let k = PI / (2.0 * half_width);
    Ok(DensityEstimate::exact(k / (k * z.im).cos()))
}

/// Annulus `1/R < |w| < R`:
/// `λ = (π / (2 log R)) / (|w| cos(π log|w| / (2 log R)))`.
pub fn density_annulus(outer_radius: f64, w: ComplexPoint) -> Result<DensityEstimate> {
    let w = ensure_finite(w)?;
    if !(outer_radius > 1.0) {
        return domain_err(format!("annulus outer radius {outer_radius} must exceed 1"));
    }
    let big_l = outer_radius.ln();
    let s = w.norm().ln();
    if !(s.abs() < big_l) {
        return domain_err(format!("|w| = {} outside annulus of radius {outer_radius}", w.norm()));
    }
    let k = PI / (2.0 * big_l);
    Ok(DensityEstimate::exact(k / (w.norm() * (k * s).cos())))
}

/// Two-sided estimate from the distance to the boundary of a simply
/// connected domain.
pub fn density_bounds_distance(domain: &DomainSpec, w: ComplexPoint) -> Result<DensityEstimate> {
    if !domain.is_simply_connected() {
        return Err(HypError::Configuration(format!(
            "distance bounds need a simply connected domain, got {}",
            domain.label()
        )));
    }
    DensityEstimate::from_boundary_distance(domain.boundary_distance(w)?)
}

/// `1/m(t)`, where `m(t)` is the length of the vertical cross-section of the
/// domain through `t`. Symmetrizing about the real axis gives a domain that
/// contains the vertical segment of length `m(t)` centered at `t` and sits
/// inside a strip of that width locally, whence `λ(t) ≥ 1/m(t)`.
pub fn density_lower_symmetrization<M: Fn(f64) -> f64>(m_of_t: M, t: f64) -> Result<f64> {
    let m = m_of_t(t);
    if !(m > 0.0 && m.is_finite()) {
        return domain_err(format!("cross-section width {m} at t = {t} must be positive"));
    }
    Ok(1.0 / m)
}

/// `ρ_𝔻(z, w) = log((1 + t)/(1 − t))`, `t = |z − w|/|1 − z̄ w|`.
pub fn disc_distance(z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
    let z = ensure_in_disc(z)?;
    let w = ensure_in_disc(w)?;
    let num = (z - w).norm();
    if num == 0.0 {
        return Ok(0.0);
    }
    let den = (1.0 - z.conj() * w).norm();
    // 1 − t² = (1 − |z|²)(1 − |w|²)/|1 − z̄w|², accurate near the boundary
    let one_minus_t2 = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / (den * den);
    let t = num / den;
    Ok(2.0 * ((1.0 + t) * (1.0 + t) / one_minus_t2).sqrt().ln())
}

/// `ℓ(r) = ρ_𝔻(0, r) = log((1 + r)/(1 − r))`
pub fn ell(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("ell needs 0 <= r < 1, got {r}"));
    }
    Ok((2.0 * r / (1.0 - r)).ln_1p())
}

/// `λ(z)/λ(w)` lies within a factor `4 e^{ρ(z,w)}` of 1, checked in log form:
/// `|log(λ(z)/λ(w))| ≤ log 4 + ρ(z, w)`.
pub fn harnack_ratio_check(z: ComplexPoint, w: ComplexPoint) -> Result<InequalityReport> {
    let rho = disc_distance(z, w)?;
    let ratio = disc_density_value(z) / disc_density_value(w);
    let bound = 4.0 * rho.exp();
    Ok(
        InequalityReport::new("harnack", ratio.ln().abs(), 4f64.ln() + rho, TOL_CLOSED_FORM)
            .param("ratio", ratio)
            .param("lower_bound", 1.0 / bound)
            .param("upper_bound", bound)
            .param("rho", rho),
    )
}

/// `A_h = 4π sinh²(d/2)`, the hyperbolic area of a disc of hyperbolic radius `d`.
pub fn hyperbolic_disc_area(d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return domain_err(format!("hyperbolic radius {d} must be positive"));
    }
    Ok(4.0 * PI * (0.5 * d).sinh().powi(2))
}

/// Hyperbolic average of `f` over the hyperbolic disc of radius `d` about
/// `z0`, compared with `f(z0)`. The report's `lhs` is the relative error
/// `|mean − f(z0)| / scale` with `scale = max(|f(z0)|, Σ|a_n|)`, and `rhs`
/// is `tol`.
pub fn hyperbolic_mean_value(
    f: &PowerSeriesFunction,
    z0: ComplexPoint,
    d: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let area = hyperbolic_disc_area(d)?;
    let z0 = ensure_in_disc(z0)?;
    // u ↦ (u + z0)/(1 + z̄0 u) carries {|u| < tanh(d/2)} onto the disc about z0
    // and preserves the area element λ² dx dy.
    let recenter = MoebiusMap::new(ComplexPoint::new(1.0, 0.0), z0, z0.conj(), ComplexPoint::new(1.0, 0.0))?;
    let radius = (0.5 * d).tanh();
    let angular_tol = 0.01 * tol;
    let quad = Quadrature::new(0.1 * tol * area).with_rel_tol(0.0);
    let (integral, _) = quad.integrate_complex(
        |rho| {
            let mean = periodic_mean(
                |phi| {
                    let u = ComplexPoint::from_polar(rho, phi);
                    // recentered points stay inside the disc
                    f.eval(recenter.apply(u).expect("no pole inside the disc"))
                        .expect("recentered point inside the disc")
                },
                angular_tol,
                1 << 16,
            )
            .expect("trapezoid converges for polynomials");
            let w = 1.0 - rho * rho;
            mean * (2.0 * PI * rho * 4.0 / (w * w))
        },
        0.0,
        radius,
    )?;
    let mean = integral / area;
    let center = f.eval(z0)?;
    let scale = center.norm().max(f.coefficient_l1()).max(f64::MIN_POSITIVE);
    let rel = (mean - center).norm() / scale;
    Ok(InequalityReport::new("mean_value", rel, tol, 0.0)
        .param("d", d)
        .param("z0_re", z0.re)
        .param("z0_im", z0.im)
        .param("mean_re", mean.re)
        .param("mean_im", mean.im)
        .param("center_re", center.re)
        .param("center_im", center.im))
}
