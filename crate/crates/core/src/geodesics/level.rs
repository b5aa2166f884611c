//! Half-level sets of solved grids by marching squares.

use std::collections::HashMap;
use std::io::Write;

use crate::complex::{segment_distance, ComplexPoint};
use crate::error::{HypError, Result};

use super::grid::{Grid, GridDomain};

/// An ordered polyline approximating `{ω = ½}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelPolyline {
    pub points: Vec<ComplexPoint>,
    /// Spacing of the grid it was extracted from.
    pub h: f64,
}

impl LevelPolyline {
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// Keeps the longest run of consecutive points at distance at least
    /// `margin` from the boundary of `domain`.
    pub fn clip<D: GridDomain + ?Sized>(&self, domain: &D, margin: f64) -> Result<LevelPolyline> {
        let mut best: (usize, usize) = (0, 0);
        let mut start = None;
        for (i, p) in self.points.iter().enumerate() {
            let keep = domain.boundary_distance(*p) >= margin;
            match (keep, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    if i - s > best.1 - best.0 {
                        best = (s, i);
                    }
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            if self.points.len() - s > best.1 - best.0 {
                best = (s, self.points.len());
            }
        }
        if best.1 - best.0 < 2 {
            return Err(HypError::NotFound(format!("no level set left after clipping at {margin}")));
        }
        Ok(LevelPolyline { points: self.points[best.0..best.1].to_vec(), h: self.h })
    }

    /// Distance from `p` to the polyline.
    pub fn distance_to(&self, p: ComplexPoint) -> f64 {
        if self.points.len() == 1 {
            return (p - self.points[0]).norm();
        }
        self.points
            .windows(2)
            .map(|w| segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Points where the polyline meets the horizontal line `y = y0`.
    pub fn crossings_y(&self, y0: f64) -> Vec<ComplexPoint> {
        let mut out = Vec::new();
        for w in self.points.windows(2) {
            let (a, b) = (w[0].im - y0, w[1].im - y0);
            if a == 0.0 {
                out.push(w[0]);
            } else if a * b < 0.0 {
                let t = a / (a - b);
                out.push(w[0] + (w[1] - w[0]) * t);
            }
        }
        if let Some(last) = self.points.last() {
            if last.im == y0 && self.points.len() > 1 {
                out.push(*last);
            }
        }
        out
    }

    /// Writes `x,y,value` rows; the value column is the level, ½.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,value")?;
        for p in &self.points {
            writeln!(out, "{},{},0.5", p.re, p.im)?;
        }
        Ok(())
    }
}

/// Symmetric Hausdorff distance between two polylines, with the directed
/// parts measured from vertices to segments.
pub fn hausdorff(a: &LevelPolyline, b: &LevelPolyline) -> f64 {
    let directed = |x: &LevelPolyline, y: &LevelPolyline| {
        x.points.iter().map(|p| y.distance_to(*p)).fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Marching squares on cells whose four corners are interior, with linear
/// interpolation along cell edges. Saddle cells are resolved by the cell
/// average. Returns the longest connected piece.
pub fn extract_half_level(grid: &Grid) -> Result<LevelPolyline> {
    extract_level(grid, 0.5)
}

pub fn extract_level(grid: &Grid, level: f64) -> Result<LevelPolyline> {
    let (nx, ny) = (grid.nx, grid.ny);
    let v = grid.values();
    // edge ids: 2k for the edge (k, k+1), 2k+1 for (k, k+nx)
    let edge_point = |id: usize| -> ComplexPoint {
        let k = id / 2;
        let q = if id % 2 == 0 { k + 1 } else { k + nx };
        let (va, vb) = (v[k] - level, v[q] - level);
        let t = va / (va - vb);
        let pa = grid.node(k % nx, k / nx);
        let pb = grid.node(q % nx, q / nx);
        pa + (pb - pa) * t
    };
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let k = j * nx + i;
            let corners = [k, k + 1, k + nx + 1, k + nx];
            if corners.iter().any(|&q| !grid.interior[q]) {
                continue;
            }
            let above = corners.map(|q| v[q] >= level);
            // edges in counterclockwise order: bottom, right, top, left
            let edges = [2 * k, 2 * (k + 1) + 1, 2 * (k + nx), 2 * k + 1];
            let cut: Vec<usize> = (0..4).filter(|&e| above[e] != above[(e + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    let mean = corners.iter().map(|&q| v[q]).sum::<f64>() / 4.0;
                    // pair each cut edge with the neighbor that keeps the
                    // center's side connected
                    if (mean >= level) == above[0] {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }
    if segments.is_empty() {
        return Err(HypError::NotFound(format!("level {level} does not occur in the interior")));
    }

    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(s);
        incident.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut best: Vec<usize> = Vec::new();
    let walk = |start_edge: usize, first: usize, used: &mut Vec<bool>| -> Vec<usize> {
        let mut chain = vec![start_edge];
        let mut seg = first;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            chain.push(next);
            at = next;
            match incident[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        chain
    };
    // open chains start at edges touched once; closed loops are picked up after
    let mut starts: Vec<usize> = incident.iter().filter(|(_, s)| s.len() == 1).map(|(e, _)| *e).collect();
    starts.sort_unstable();
    for e in starts {
        let s = incident[&e][0];
        if used[s] {
            continue;
        }
        let chain = walk(e, s, &mut used);
        if chain.len() > best.len() {
            best = chain;
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            let chain = walk(segments[s].0, s, &mut used);
            if chain.len() > best.len() {
                best = chain;
            }
        }
    }
    Ok(LevelPolyline { points: best.into_iter().map(edge_point).collect(), h: grid.h })
}
