//! Plane points as complex numbers.

use num_complex::Complex64;

use crate::error::{domain_err, Result};

/// A point of the complex plane. Stored values are always finite.
pub type ComplexPoint = Complex64;

/// Shorthand constructor.
#[inline]
pub fn c(re: f64, im: f64) -> ComplexPoint {
    Complex64::new(re, im)
}

/// Rejects NaN or infinite components.
pub fn ensure_finite(z: ComplexPoint) -> Result<ComplexPoint> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        domain_err(format!("non-finite point {z}"))
    }
}

/// Requires `|z| < 1`.
pub fn ensure_in_disc(z: ComplexPoint) -> Result<ComplexPoint> {
    let z = ensure_finite(z)?;
    if z.norm_sqr() < 1.0 {
        Ok(z)
    } else {
        domain_err(format!("|z| = {} is not < 1", z.norm()))
    }
}

/// `e^{iθ}`
#[inline]
pub fn unit(theta: f64) -> ComplexPoint {
    Complex64::from_polar(1.0, theta)
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}
