//! Plane curves: radial segments of the disc, polylines, and sampled paths.

use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, unit, ComplexPoint};
use crate::error::{HypError, Result};
use crate::quadrature::{integrate_radial, Quadrature};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Curve {
    /// `[0, r e^{iθ}]`
    RadialSegment { theta: f64, r: f64 },
    Polyline { vertices: Vec<ComplexPoint> },
    /// Points `points[i]` at strictly increasing parameters `params[i]`,
    /// joined by straight segments.
    Sampled { params: Vec<f64>, points: Vec<ComplexPoint> },
}

impl Curve {
    pub fn radial(theta: f64, r: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..1.0).contains(&r)) {
            return Err(HypError::Construction(format!("radial segment needs 0 <= r < 1, got {r}")));
        }
        Ok(Curve::RadialSegment { theta, r })
    }

    pub fn polyline(vertices: Vec<ComplexPoint>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(HypError::Construction("polyline needs at least two vertices".into()));
        }
        for v in &vertices {
            ensure_finite(*v)?;
        }
        Ok(Curve::Polyline { vertices })
    }

    pub fn sampled(params: Vec<f64>, points: Vec<ComplexPoint>) -> Result<Self> {
        if params.len() != points.len() || params.len() < 2 {
            return Err(HypError::Construction("sampled curve needs matching grids of length >= 2".into()));
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(HypError::Construction("parameter grid must be strictly increasing".into()));
        }
        for v in &points {
            ensure_finite(*v)?;
        }
        Ok(Curve::Sampled { params, points })
    }

    /// Consecutive straight pieces of the curve.
    pub fn segments(&self) -> Vec<(ComplexPoint, ComplexPoint)> {
        match self {
            Curve::RadialSegment { theta, r } => vec![(ComplexPoint::new(0.0, 0.0), unit(*theta) * *r)],
            Curve::Polyline { vertices } => vertices.windows(2).map(|w| (w[0], w[1])).collect(),
            Curve::Sampled { points, .. } => points.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }

    pub fn euclidean_length(&self) -> f64 {
        self.segments().iter().map(|(a, b)| (b - a).norm()).sum()
    }

    /// `∫_γ g |dz|`. Radial segments are integrated with the boundary-aware
    /// substitution; polyline pieces are integrated piece by piece.
    pub fn integrate<G: Fn(ComplexPoint) -> f64>(&self, g: G, quad: &Quadrature) -> Result<f64> {
        match self {
            Curve::RadialSegment { theta, r } => {
                let dir = unit(*theta);
                Ok(integrate_radial(|t, _| g(dir * t), *r, quad)?.value)
            }
            _ => {
                let mut total = 0.0;
                for (a, b) in self.segments() {
                    let len = (b - a).norm();
                    if len == 0.0 {
                        continue;
                    }
                    let r = quad.integrate(|s| g(a + (b - a) * s), 0.0, 1.0)?;
                    total += r.value * len;
                }
                Ok(total)
            }
        }
    }
}
