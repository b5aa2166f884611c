//! Grid domains with arc data: the disc and simple polygons.

use std::f64::consts::PI;

use crate::complex::{segment_distance, unit, ComplexPoint};
use crate::error::{HypError, Result};

use super::grid::{GridDomain, Jump};

/// Boundary points this close to an arc endpoint get the value ½.
const ENDPOINT_TOL: f64 = 1e-12;

fn wrap_angle(a: f64) -> f64 {
    a.rem_euclid(2.0 * PI)
}

/// The unit disc with data 1 on the counterclockwise arc from `start` to
/// `end` and 0 elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscArc {
    pub start: f64,
    pub end: f64,
}

impl DiscArc {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        let len = wrap_angle(end - start);
        if !(start.is_finite() && end.is_finite()) || len < 1e-9 {
            return Err(HypError::Construction(format!("degenerate arc from {start} to {end}")));
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> f64 {
        wrap_angle(self.end - self.start)
    }

    fn jumps(&self) -> [Jump; 2] {
        let at = |t: f64, rise: f64| Jump {
            at: unit(t),
            outgoing: unit(t) * ComplexPoint::new(0.0, 1.0),
            angle: PI,
            rise,
        };
        [at(self.start, 1.0), at(self.end, -1.0)]
    }

    /// The complementary arc, so that the two harmonic measures sum to 1.
    pub fn complement(&self) -> Self {
        Self { start: self.end, end: self.start }
    }
}

impl GridDomain for DiscArc {
    fn bounds(&self) -> [f64; 4] {
        [-1.0, 1.0, -1.0, 1.0]
    }

    fn contains(&self, p: ComplexPoint) -> bool {
        p.norm_sqr() < 1.0 - 1e-12
    }

    fn boundary_crossing(&self, a: ComplexPoint, b: ComplexPoint) -> f64 {
        // |a + t d| = 1
        let d = b - a;
        let qa = d.norm_sqr();
        let qb = 2.0 * (a.re * d.re + a.im * d.im);
        let qc = a.norm_sqr() - 1.0;
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        // qc < 0, so the positive root is the stable form below
        let t = -2.0 * qc / (qb + disc.sqrt());
        t.clamp(0.0, 1.0)
    }

    fn boundary_value(&self, p: ComplexPoint) -> f64 {
        let s = wrap_angle(p.arg() - self.start);
        let len = self.length();
        if s.min(2.0 * PI - s) < ENDPOINT_TOL || (s - len).abs() < ENDPOINT_TOL {
            0.5
        } else if s < len {
            1.0
        } else {
            0.0
        }
    }

    fn boundary_distance(&self, p: ComplexPoint) -> f64 {
        1.0 - p.norm()
    }

    fn singular_part(&self, p: ComplexPoint) -> f64 {
        self.jumps().iter().map(|j| j.eval(p)).sum()
    }
}

/// A simple polygon, counterclockwise, with data 1 on the boundary
/// stretch from arc length `arc.0` to `arc.1` (measured from the first
/// vertex, taken modulo the perimeter) and 0 elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonDomain {
    vertices: Vec<ComplexPoint>,
    cumulative: Vec<f64>,
    pub arc: (f64, f64),
    jumps: [Jump; 2],
}

impl PolygonDomain {
    pub fn new(vertices: Vec<ComplexPoint>, arc: (f64, f64)) -> Result<Self> {
        let mut v: Vec<ComplexPoint> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(HypError::Construction("non-finite polygon vertex".into()));
            }
            if v.last().map_or(true, |q| (p - q).norm() > 1e-14) {
                v.push(p);
            }
        }
        while v.len() > 1 && (v[0] - v[v.len() - 1]).norm() <= 1e-14 {
            v.pop();
        }
        if v.len() < 3 {
            return Err(HypError::Construction("polygon needs three distinct vertices".into()));
        }
        let signed: f64 = (0..v.len()).map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            a.re * b.im - a.im * b.re
        }).sum();
        if signed <= 0.0 {
            return Err(HypError::Construction("polygon must be counterclockwise".into()));
        }
        let mut cumulative = vec![0.0];
        for i in 0..v.len() {
            let len = (v[(i + 1) % v.len()] - v[i]).norm();
            cumulative.push(cumulative[i] + len);
        }
        let placeholder = Jump { at: v[0], outgoing: ComplexPoint::new(1.0, 0.0), angle: PI, rise: 0.0 };
        let mut poly = Self { vertices: v, cumulative, arc, jumps: [placeholder; 2] };
        if !(arc.0.is_finite() && arc.1.is_finite()) || poly.arc_length() < 1e-12 {
            return Err(HypError::Construction("degenerate boundary arc".into()));
        }
        poly.jumps = [poly.jump_at(arc.0, 1.0), poly.jump_at(arc.1, -1.0)];
        Ok(poly)
    }

    pub fn vertices(&self) -> &[ComplexPoint] {
        &self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        self.cumulative[self.vertices.len()]
    }

    fn arc_length(&self) -> f64 {
        (self.arc.1 - self.arc.0).rem_euclid(self.perimeter())
    }

    pub fn with_arc(&self, arc: (f64, f64)) -> Result<Self> {
        Self::new(self.vertices.clone(), arc)
    }

    fn edge_direction(&self, i: usize) -> ComplexPoint {
        let n = self.vertices.len();
        let d = self.vertices[(i + 1) % n] - self.vertices[i % n];
        d / d.norm()
    }

    fn jump_at(&self, s: f64, rise: f64) -> Jump {
        let n = self.vertices.len();
        let s = s.rem_euclid(self.perimeter());
        let i = self.cumulative.partition_point(|&x| x <= s).saturating_sub(1).min(n - 1);
        let corner = if s - self.cumulative[i] < 1e-12 {
            Some(i)
        } else if self.cumulative[i + 1] - s < 1e-12 {
            Some((i + 1) % n)
        } else {
            None
        };
        match corner {
            Some(k) => {
                let incoming = self.edge_direction(k + n - 1);
                let outgoing = self.edge_direction(k);
                let turn = (outgoing / incoming).arg();
                Jump { at: self.vertices[k], outgoing, angle: PI - turn, rise }
            }
            None => Jump { at: self.point_at(s), outgoing: self.edge_direction(i), angle: PI, rise },
        }
    }

    /// Boundary point at arc length `s` (modulo the perimeter).
    pub fn point_at(&self, s: f64) -> ComplexPoint {
        let s = s.rem_euclid(self.perimeter());
        let n = self.vertices.len();
        let i = self.cumulative.partition_point(|&x| x <= s).saturating_sub(1).min(n - 1);
        let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
        let len = self.cumulative[i + 1] - self.cumulative[i];
        a + (b - a) * ((s - self.cumulative[i]) / len)
    }

    /// Arc-length parameter of the boundary point nearest to `p`.
    pub fn param_of(&self, p: ComplexPoint) -> f64 {
        let n = self.vertices.len();
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let d = b - a;
            let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
            let dist = (a + d * t - p).norm();
            if dist < best.0 {
                best = (dist, self.cumulative[i] + t * d.norm());
            }
        }
        best.1
    }

    /// Even–odd rule.
    fn winding_inside(&self, p: ComplexPoint) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if p.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

impl GridDomain for PolygonDomain {
    fn bounds(&self) -> [f64; 4] {
        self.vertices.iter().fold(
            [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY],
            |[xa, xb, ya, yb], p| [xa.min(p.re), xb.max(p.re), ya.min(p.im), yb.max(p.im)],
        )
    }

    fn contains(&self, p: ComplexPoint) -> bool {
        self.boundary_distance(p) > 1e-12 && self.winding_inside(p)
    }

    fn boundary_crossing(&self, a: ComplexPoint, b: ComplexPoint) -> f64 {
        let n = self.vertices.len();
        let d = b - a;
        let mut best: f64 = 1.0;
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let e = q - p;
            let denom = d.re * e.im - d.im * e.re;
            if denom.abs() < 1e-300 {
                continue;
            }
            let w = p - a;
            let t = (w.re * e.im - w.im * e.re) / denom;
            let u = (w.re * d.im - w.im * d.re) / denom;
            if (0.0..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
                best = best.min(t);
            }
        }
        best
    }

    fn boundary_value(&self, p: ComplexPoint) -> f64 {
        let per = self.perimeter();
        let s = (self.param_of(p) - self.arc.0).rem_euclid(per);
        let len = self.arc_length();
        if s.min(per - s) < ENDPOINT_TOL || (s - len).abs() < ENDPOINT_TOL {
            0.5
        } else if s < len {
            1.0
        } else {
            0.0
        }
    }

    fn boundary_distance(&self, p: ComplexPoint) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    fn singular_part(&self, p: ComplexPoint) -> f64 {
        self.jumps.iter().map(|j| j.eval(p)).sum()
    }
}

/// A domain with its Dirichlet data replaced by `data`.
#[derive(Debug, Clone)]
pub struct WithData<D, F> {
    pub domain: D,
    pub data: F,
}

impl<D, F> WithData<D, F> {
    pub fn new(domain: D, data: F) -> Self {
        Self { domain, data }
    }
}

impl<D: GridDomain, F: Fn(ComplexPoint) -> f64> GridDomain for WithData<D, F> {
    fn bounds(&self) -> [f64; 4] {
        self.domain.bounds()
    }

    fn contains(&self, p: ComplexPoint) -> bool {
        self.domain.contains(p)
    }

    fn boundary_crossing(&self, a: ComplexPoint, b: ComplexPoint) -> f64 {
        self.domain.boundary_crossing(a, b)
    }

    fn boundary_value(&self, p: ComplexPoint) -> f64 {
        (self.data)(p)
    }

    fn boundary_distance(&self, p: ComplexPoint) -> f64 {
        self.domain.boundary_distance(p)
    }
}
