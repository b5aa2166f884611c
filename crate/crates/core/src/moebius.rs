//! Möbius transformations `z ↦ (az + b)/(cz + d)`.

use serde::{Deserialize, Serialize};

use crate::complex::{c, ensure_finite, ensure_in_disc, ComplexPoint};
use crate::error::{domain_err, HypError, Result};

const POLE_TOL: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: ComplexPoint,
    pub b: ComplexPoint,
    pub c: ComplexPoint,
    pub d: ComplexPoint,
}

impl MoebiusMap {
    pub fn new(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint, d: ComplexPoint) -> Result<Self> {
        for v in [a, b, c, d] {
            ensure_finite(v)?;
        }
        let det = a * d - b * c;
        if det.norm() <= f64::EPSILON * (a.norm() * d.norm() + b.norm() * c.norm()).max(f64::MIN_POSITIVE) {
            return domain_err("degenerate Möbius map (ad - bc = 0)");
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: c(1.0, 0.0),
            b: c(0.0, 0.0),
            c: c(0.0, 0.0),
            d: c(1.0, 0.0),
        }
    }

    pub fn determinant(&self) -> ComplexPoint {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        let den = self.c * z + self.d;
        if den.norm() <= POLE_TOL {
            return Err(HypError::Pole { re: z.re, im: z.im });
        }
        Ok((self.a * z + self.b) / den)
    }

    /// `(ad - bc)/(cz + d)^2`
    pub fn derivative(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        let den = self.c * z + self.d;
        if den.norm() <= POLE_TOL {
            return Err(HypError::Pole { re: z.re, im: z.im });
        }
        Ok(self.determinant() / (den * den))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

/// The disc automorphism `w ↦ (w − z0)/(1 − conj(z0) w)`, sending `z0` to 0.
pub fn disc_automorphism(z0: ComplexPoint) -> Result<MoebiusMap> {
    let z0 = ensure_in_disc(z0)?;
    Ok(MoebiusMap {
        a: c(1.0, 0.0),
        b: -z0,
        c: -z0.conj(),
        d: c(1.0, 0.0),
    })
}

/// Rotation `w ↦ e^{iφ} w`.
pub fn rotation(phi: f64) -> MoebiusMap {
    MoebiusMap {
        a: crate::complex::unit(phi),
        b: c(0.0, 0.0),
        c: c(0.0, 0.0),
        d: c(1.0, 0.0),
    }
}

/// Pointwise apply, convenience for `moebius_apply`.
pub fn moebius_apply(m: &MoebiusMap, z: ComplexPoint) -> Result<ComplexPoint> {
    m.apply(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_fixes_points() {
        let z = c(0.3, 0.1);
        assert_eq!(MoebiusMap::identity().apply(z).unwrap(), z);
    }

    #[test]
    fn automorphism_at_origin_is_identity() {
        let m = disc_automorphism(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(m.apply(c(0.5, 0.0)).unwrap().re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn automorphism_sends_center_to_zero() {
        let m = disc_automorphism(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(m.apply(c(0.5, 0.0)).unwrap().norm(), 0.0, epsilon = 1e-15);
        let at0 = m.apply(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(at0.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(at0.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn automorphism_derivative_matches_symbolic_form() {
        // d/dw (w - z0)/(1 - z̄0 w) = (1 - |z0|^2)/(1 - z̄0 w)^2; at w = z0 this is 1/(1 - |z0|^2).
        let z0 = c(0.5, 0.0);
        let m = disc_automorphism(z0).unwrap();
        let d = m.derivative(z0).unwrap();
        assert_abs_diff_eq!(d.re, 4.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-14);
        // finite-difference cross-check away from the center
        let w = c(0.1, -0.3);
        let h = 1e-6;
        let fd = (m.apply(w + h).unwrap() - m.apply(w - h).unwrap()) / (2.0 * h);
        assert!((fd - m.derivative(w).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn pole_is_reported() {
        let m = MoebiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)).unwrap();
        assert!(matches!(m.apply(c(2.0, 0.0)), Err(HypError::Pole { .. })));
    }

    #[test]
    fn degenerate_map_rejected() {
        assert!(MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
    }

    #[test]
    fn boundary_center_rejected() {
        assert!(disc_automorphism(c(1.0, 0.0)).is_err());
        assert!(disc_automorphism(c(0.6, 0.8)).is_err());
    }
}
