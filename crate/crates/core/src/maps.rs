//! Analytic maps with derivatives: the model maps between the disc, the
//! upper half-plane, the strip and the annulus, and their composition, the
//! universal covering map of a round annulus.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::complex::{c, ensure_finite, ensure_in_disc, ComplexPoint};
use crate::error::{domain_err, HypError, Result};
use crate::moebius::MoebiusMap;

/// A map that can report its value and complex derivative.
pub trait AnalyticMap {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)>;

    fn eval(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        Ok(self.eval_deriv(z)?.0)
    }
}

impl AnalyticMap for MoebiusMap {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        Ok((self.apply(z)?, self.derivative(z)?))
    }
}

impl<M: AnalyticMap + ?Sized> AnalyticMap for &M {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        (**self).eval_deriv(z)
    }
}

/// `q(z) = i(1 + z)/(1 − z)`, the disc onto the upper half-plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscToHalfPlane;

impl AnalyticMap for DiscToHalfPlane {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        let z = ensure_finite(z)?;
        let den = c(1.0, 0.0) - z;
        if den.norm() <= 1e-300 {
            return Err(HypError::Pole { re: z.re, im: z.im });
        }
        let i = c(0.0, 1.0);
        Ok((i * (1.0 + z) / den, 2.0 * i / (den * den)))
    }
}

/// `g(z) = log(−iz)`, the upper half-plane onto the strip `|Im| < π/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfPlaneToStrip;

impl AnalyticMap for HalfPlaneToStrip {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        let z = ensure_finite(z)?;
        if z.im <= 0.0 {
            return domain_err(format!("{z} is not in the upper half-plane"));
        }
        Ok(((c(0.0, -1.0) * z).ln(), 1.0 / z))
    }
}

/// `h(z) = exp(iz)`, the strip `|Im| < π/2` onto the annulus
/// `e^{−π/2} < |w| < e^{π/2}` (a covering, not injective).
#[derive(Debug, Clone, Copy, Default)]
pub struct StripToAnnulus;

impl AnalyticMap for StripToAnnulus {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        let z = ensure_finite(z)?;
        let i = c(0.0, 1.0);
        let w = (i * z).exp();
        Ok((w, i * w))
    }
}

/// `outer ∘ inner`
#[derive(Debug, Clone, Copy)]
pub struct Composed<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: AnalyticMap, B: AnalyticMap> AnalyticMap for Composed<A, B> {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        let (u, du) = self.inner.eval_deriv(z)?;
        let (w, dw) = self.outer.eval_deriv(u)?;
        Ok((w, dw * du))
    }
}

/// Universal covering map of the annulus `1/R < |w| < R`:
/// `f(z) = exp(iκ log((1 + z)/(1 − z)))` with `κ = 2 log R / π`.
///
/// For `R = e^{π/2}` this is `h ∘ g ∘ q`. The real diameter maps onto the
/// unit circle, which is the closed geodesic of the annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusCover {
    outer_radius: f64,
}

impl AnnulusCover {
    pub fn new(outer_radius: f64) -> Result<Self> {
        if !(outer_radius.is_finite() && outer_radius > 1.0) {
            return domain_err(format!("annulus outer radius {outer_radius} must exceed 1"));
        }
        Ok(Self { outer_radius })
    }

    /// The annulus `e^{−π/2} < |w| < e^{π/2}`.
    pub fn standard() -> Self {
        Self {
            outer_radius: FRAC_PI_2.exp(),
        }
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    fn kappa(&self) -> f64 {
        2.0 * self.outer_radius.ln() / PI
    }
}

impl AnalyticMap for AnnulusCover {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        let z = ensure_in_disc(z)?;
        let one = c(1.0, 0.0);
        let ik = c(0.0, self.kappa());
        let w = (ik * ((one + z) / (one - z)).ln()).exp();
        Ok((w, ik * w * 2.0 / (one - z * z)))
    }
}
