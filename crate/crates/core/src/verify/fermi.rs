//! Image areas over hyperbolic neighborhoods of geodesic segments and rays,
//! in Fermi coordinates about the real diameter.
//!
//! A point at signed distance `n` from the diameter whose foot is at
//! hyperbolic arc length `s` from 0 is `T_s(i tanh(n/2))`, where `T_s` is
//! the translation along the diameter by `s`. The hyperbolic area element
//! is `cosh n ds dn`, and the Euclidean area of an image is the integral of
//! `(|f'|/λ)²` against it.

use std::cell::Cell;

use crate::complex::{c, ComplexPoint};
use crate::error::Result;
use crate::quadrature::Quadrature;

/// Foot-point distances are cut off here on rays; the integrand carries a
/// factor `(1 − |z|²)²`, which is below `1e−30` past this point.
pub const RAY_CUTOFF: f64 = 40.0;

/// `T_s(i tanh(n/2))`
pub fn fermi_point(s: f64, n: f64) -> ComplexPoint {
    let t = (0.5 * s).tanh();
    let w = c(0.0, (0.5 * n).tanh());
    (w + t) / (c(1.0, 0.0) + w * t)
}

/// `1 − |T_s(i tanh(n/2))|² = sech²(s/2) sech²(n/2) / (1 + t²u²)` with
/// `t = tanh(s/2)`, `u = tanh(n/2)`, free of cancellation near the circle.
fn fermi_gap(s: f64, n: f64) -> f64 {
    let (t, u) = ((0.5 * s).tanh(), (0.5 * n).tanh());
    let (cs, cn) = ((0.5 * s).cosh(), (0.5 * n).cosh());
    1.0 / (cs * cs * cn * cn * (1.0 + t * t * u * u))
}

/// `∬ g cosh n ds dn` over `{ρ(z, [0, length]) < d}` in the Fermi chart,
/// with `g(z, 1 − |z|²)` evaluated at the chart point `z`. `length = None`
/// means the ray `[0, 1)`, cut off at [`RAY_CUTOFF`].
pub fn fermi_integral<G: Fn(ComplexPoint, f64) -> f64>(g: G, length: Option<f64>, d: f64, tol: f64) -> Result<f64> {
    let inner_quad = Quadrature::new(0.1 * tol).with_rel_tol(1e-10);
    let outer_quad = Quadrature::new(tol).with_rel_tol(1e-9);
    let cosh_d = d.cosh();
    let failure = Cell::new(None);
    let value = outer_quad.integrate(
        |n| {
            // points within d of an endpoint but beyond its foot form the caps
            let cap = (cosh_d / n.cosh()).max(1.0).acosh();
            let end = match length {
                Some(l) => l + cap,
                None => RAY_CUTOFF,
            };
            match inner_quad.integrate(|s| g(fermi_point(s, n), fermi_gap(s, n)), -cap, end) {
                Ok(r) => r.value * n.cosh(),
                Err(e) => {
                    let first = failure.take();
                    failure.set(first.or(Some(e)));
                    f64::NAN
                }
            }
        },
        -d,
        d,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(value?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_matches_direct_evaluation() {
        for (s, n) in [(0.0, 0.0), (1.0, 0.5), (3.0, -0.7), (-2.0, 1.1)] {
            let z = fermi_point(s, n);
            assert!((fermi_gap(s, n) - (1.0 - z.norm_sqr())).abs() < 1e-14, "{s} {n}");
        }
    }

    #[test]
    fn hyperbolic_area_of_a_neighborhood() {
        // a segment of length L: 2L sinh d for the band, plus a disc of radius d
        let (l, d) = (1.5_f64, 0.8_f64);
        let exact = 2.0 * l * d.sinh() + 4.0 * std::f64::consts::PI * (0.5 * d).sinh().powi(2);
        let v = fermi_integral(|_, _| 1.0, Some(l), d, 1e-10).unwrap();
        assert!((v - exact).abs() < 1e-8, "{v} {exact}");
    }
}
