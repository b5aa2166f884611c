//! Node grids over Jordan domains and the Shortley–Weller Laplace solver.

use std::io::Write;

use crate::complex::{c, ComplexPoint};
use crate::error::{HypError, Result};

/// Default max-residual target for [`laplace_solve`].
pub const SOLVER_TOL: f64 = 1e-8;
/// Sweep budget for [`laplace_solve`].
pub const SWEEP_BUDGET: usize = 100_000;

/// A Jordan domain with Dirichlet data, as seen by the grid builder.
pub trait GridDomain {
    /// `[x_min, x_max, y_min, y_max]` of a box containing the closure.
    fn bounds(&self) -> [f64; 4];
    /// Strict interior membership.
    fn contains(&self, p: ComplexPoint) -> bool;
    /// Fraction `t ∈ (0, 1]` at which the segment from the interior point
    /// `a` towards `b` first meets the boundary.
    fn boundary_crossing(&self, a: ComplexPoint, b: ComplexPoint) -> f64;
    /// Dirichlet data at a boundary point, in `[0, 1]`.
    fn boundary_value(&self, p: ComplexPoint) -> f64;
    fn boundary_distance(&self, p: ComplexPoint) -> f64;
    /// An exactly harmonic function with the same jumps as the boundary
    /// data. The grid only has to resolve the continuous remainder, which
    /// keeps the discretization error from depending on where the jumps
    /// fall between grid lines.
    fn singular_part(&self, _p: ComplexPoint) -> f64 {
        0.0
    }
}

/// A jump of the boundary data at `at`, where the boundary leaves along
/// `outgoing` (counterclockwise) with interior angle `angle`, and the data
/// change by `rise` when passing `at` counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub at: ComplexPoint,
    pub outgoing: ComplexPoint,
    pub angle: f64,
    pub rise: f64,
}

impl Jump {
    /// Harmonic near `at` with boundary values `0` after and `−rise`
    /// before the jump; the branch cut runs out along the exterior bisector.
    pub fn eval(&self, z: ComplexPoint) -> f64 {
        let w = (z - self.at) / self.outgoing;
        if w.norm_sqr() == 0.0 {
            return -0.5 * self.rise;
        }
        let mid = 0.5 * self.angle;
        // rotate so that the cut sits on the negative real axis
        let phi = (w * crate::complex::unit(-mid)).arg() + mid;
        -self.rise * phi / self.angle
    }
}

#[derive(Debug, Clone)]
struct Stencil {
    node: usize,
    /// Normalized weights (they sum to 1) and the neighbors they multiply.
    /// Arms ending on the boundary point at the zero slot past the nodes.
    weights: [f64; 4],
    arms: [usize; 4],
    /// Boundary contributions and the singular-part correction, weighted.
    rhs: f64,
    /// The subtracted singular part at this node.
    singular: f64,
}

/// Nodes `(x0 + i h, y0 + j h)`, `0 ≤ i < nx`, `0 ≤ j < ny`, row-major in `j`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    pub interior: Vec<bool>,
    /// Solution at interior nodes, NaN elsewhere, and a trailing zero slot.
    values: Vec<f64>,
    /// Boundary points reached by some stencil arm, with their data.
    pub boundary_samples: Vec<(ComplexPoint, f64)>,
    /// Range of the data actually handed to the grid, `g − S`.
    remainder_range: (f64, f64),
    stencils: Vec<Stencil>,
    /// Nodes whose four neighbors are interior at distance `h`, with their
    /// right sides, split by the parity of `i + j` (red-black ordering).
    regular: [Vec<(usize, f64)>; 2],
    /// Indices into `stencils` of the remaining nodes, by parity.
    irregular: [Vec<usize>; 2],
    pub residual: f64,
    pub sweeps: usize,
    solved: bool,
}

impl Grid {
    /// Lays a grid of spacing `h` over `domain`. Node coordinates are integer
    /// multiples of `h`, so grids of the same `h` over nested domains share
    /// nodes.
    pub fn new<D: GridDomain + ?Sized>(domain: &D, h: f64) -> Result<Grid> {
        Self::build(domain, h, true)
    }

    /// Like [`Grid::new`] but without removing the jumps of the data first,
    /// so the grid must resolve them itself (first-order accurate).
    pub fn new_plain<D: GridDomain + ?Sized>(domain: &D, h: f64) -> Result<Grid> {
        Self::build(domain, h, false)
    }

    fn build<D: GridDomain + ?Sized>(domain: &D, h: f64, subtract: bool) -> Result<Grid> {
        let singular = |p: ComplexPoint| if subtract { domain.singular_part(p) } else { 0.0 };
        if !(h > 0.0 && h.is_finite()) {
            return Err(HypError::Construction(format!("grid spacing must be positive, got {h}")));
        }
        let [xa, xb, ya, yb] = domain.bounds();
        let i0 = (xa / h).floor() as i64 - 1;
        let j0 = (ya / h).floor() as i64 - 1;
        let nx = ((xb / h).ceil() as i64 + 2 - i0) as usize;
        let ny = ((yb / h).ceil() as i64 + 2 - j0) as usize;
        if nx.saturating_mul(ny) > 50_000_000 {
            return Err(HypError::Construction(format!("grid of {nx}x{ny} nodes is too large")));
        }
        let x0 = i0 as f64 * h;
        let y0 = j0 as f64 * h;
        let point = |i: usize, j: usize| c(x0 + i as f64 * h, y0 + j as f64 * h);
        let point_of = |k: usize| point(k % nx, k / nx);

        let mut interior = vec![false; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                interior[j * nx + i] = domain.contains(point(i, j));
            }
        }

        let mut stencils = Vec::new();
        let mut boundary_samples = Vec::new();
        let mut remainder_range = (f64::INFINITY, f64::NEG_INFINITY);
        let offsets: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        for j in 0..ny {
            for i in 0..nx {
                let k = j * nx + i;
                if !interior[k] {
                    continue;
                }
                let p = point(i, j);
                let mut lengths = [h; 4];
                let mut arms = [nx * ny; 4];
                let mut boundary = [None; 4];
                for (a, (di, dj)) in offsets.iter().enumerate() {
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    let inside = ii >= 0
                        && jj >= 0
                        && (ii as usize) < nx
                        && (jj as usize) < ny
                        && interior[jj as usize * nx + ii as usize];
                    if inside {
                        arms[a] = jj as usize * nx + ii as usize;
                        continue;
                    }
                    let q = c(x0 + ii as f64 * h, y0 + jj as f64 * h);
                    let t = domain.boundary_crossing(p, q).clamp(1e-6, 1.0);
                    let b = p + (q - p) * t;
                    let g = domain.boundary_value(b);
                    if !(0.0..=1.0).contains(&g) {
                        return Err(HypError::Construction(format!("boundary value {g} outside [0, 1]")));
                    }
                    lengths[a] = t * h;
                    boundary[a] = Some((b, g));
                    let rem = g - singular(b);
                    remainder_range = (remainder_range.0.min(rem), remainder_range.1.max(rem));
                    boundary_samples.push((b, g));
                }
                let [he, hw, hn, hs] = lengths;
                let raw = [
                    2.0 / (he * (he + hw)),
                    2.0 / (hw * (he + hw)),
                    2.0 / (hn * (hn + hs)),
                    2.0 / (hs * (hn + hs)),
                ];
                let diag: f64 = raw.iter().sum();
                let weights = raw.map(|w| w / diag);
                // ω = v + S with S exactly harmonic: the stencil for v carries
                // the data g − S, which rewritten for ω gives this right side
                let mut rhs = singular(p);
                for a in 0..4 {
                    rhs += weights[a]
                        * match boundary[a] {
                            Some((b, g)) => g - singular(b),
                            None => -singular(point_of(arms[a])),
                        };
                }
                stencils.push(Stencil { node: k, weights, arms, rhs, singular: singular(p) });
            }
        }
        if stencils.is_empty() {
            return Err(HypError::Construction(format!("no interior nodes at h = {h}")));
        }
        let (mut regular, mut irregular) = ([Vec::new(), Vec::new()], [Vec::new(), Vec::new()]);
        for (idx, st) in stencils.iter().enumerate() {
            let k = st.node;
            let parity = (k % nx + k / nx) % 2;
            if st.arms == [k + 1, k - 1, k + nx, k - nx] && st.weights.iter().all(|&w| w == 0.25) {
                regular[parity].push((k, st.rhs));
            } else {
                irregular[parity].push(idx);
            }
        }
        let mean = boundary_samples.iter().map(|(_, g)| g).sum::<f64>() / boundary_samples.len().max(1) as f64;
        let mut values: Vec<f64> = interior.iter().map(|&b| if b { mean } else { f64::NAN }).collect();
        values.push(0.0);
        Ok(Grid {
            x0,
            y0,
            h,
            nx,
            ny,
            interior,
            values,
            boundary_samples,
            remainder_range,
            stencils,
            regular,
            irregular,
            residual: f64::INFINITY,
            sweeps: 0,
            solved: false,
        })
    }

    pub fn node(&self, i: usize, j: usize) -> ComplexPoint {
        c(self.x0 + i as f64 * self.h, self.y0 + j as f64 * self.h)
    }

    /// Value at node index `k` (NaN off the interior).
    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values[..self.nx * self.ny]
    }

    pub fn interior_count(&self) -> usize {
        self.stencils.len()
    }

    pub fn is_solved(&self) -> bool {
        self.solved
    }

    /// Index of the node at `p`, if `p` is (to rounding) a node of this grid.
    pub fn index_of(&self, p: ComplexPoint) -> Option<usize> {
        let fi = (p.re - self.x0) / self.h;
        let fj = (p.im - self.y0) / self.h;
        let (i, j) = (fi.round(), fj.round());
        if (fi - i).abs() > 1e-6 || (fj - j).abs() > 1e-6 || i < 0.0 || j < 0.0 {
            return None;
        }
        let (i, j) = (i as usize, j as usize);
        (i < self.nx && j < self.ny).then(|| j * self.nx + i)
    }

    /// Interior nodes with their values.
    pub fn interior_values(&self) -> impl Iterator<Item = (ComplexPoint, f64)> + '_ {
        self.stencils
            .iter()
            .map(|s| (self.node(s.node % self.nx, s.node / self.nx), self.values[s.node]))
    }

    /// Seeds the iteration from another solve (typically a coarser one) by
    /// bilinear interpolation where available.
    pub fn warm_start(&mut self, coarse: &Grid) {
        for s in &self.stencils {
            let p = c(self.x0 + (s.node % self.nx) as f64 * self.h, self.y0 + (s.node / self.nx) as f64 * self.h);
            if let Some(v) = coarse.value_at(p) {
                self.values[s.node] = v;
            }
        }
    }

    /// Bilinear interpolation inside cells whose four corners are interior.
    pub fn value_at(&self, p: ComplexPoint) -> Option<f64> {
        let fi = (p.re - self.x0) / self.h;
        let fj = (p.im - self.y0) / self.h;
        if !(fi >= 0.0 && fj >= 0.0) {
            return None;
        }
        let (i, j) = (fi.floor() as usize, fj.floor() as usize);
        if i + 1 >= self.nx || j + 1 >= self.ny {
            return None;
        }
        let (u, v) = (fi - i as f64, fj - j as f64);
        let k = j * self.nx + i;
        let corners = [k, k + 1, k + self.nx, k + self.nx + 1];
        if corners.iter().any(|&q| !self.interior[q]) {
            return None;
        }
        let [a, b, cc, d] = corners.map(|q| self.values[q]);
        Some(a * (1.0 - u) * (1.0 - v) + b * u * (1.0 - v) + cc * (1.0 - u) * v + d * u * v)
    }

    fn max_residual(&self) -> f64 {
        self.stencils
            .iter()
            .map(|s| (self.apply(s) - self.values[s.node]).abs())
            .fold(0.0, f64::max)
    }

    #[inline]
    fn apply(&self, s: &Stencil) -> f64 {
        let v = &self.values;
        s.rhs
            + s.weights[0] * v[s.arms[0]]
            + s.weights[1] * v[s.arms[1]]
            + s.weights[2] * v[s.arms[2]]
            + s.weights[3] * v[s.arms[3]]
    }

    /// Extremes of the boundary data.
    pub fn boundary_range(&self) -> (f64, f64) {
        self.boundary_samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, g)| (lo.min(*g), hi.max(*g)))
    }

    /// Writes `x,y,value` for every interior node.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,value")?;
        for (p, v) in self.interior_values() {
            writeln!(out, "{},{},{}", p.re, p.im, v)?;
        }
        Ok(())
    }
}

/// Successive over-relaxation until the largest normalized residual is at
/// most `tol`. The discrete maximum principle is checked on the unknown the
/// grid actually solves for: the solution itself for plain grids, the
/// remainder after the jumps are removed otherwise.
pub fn laplace_solve(mut grid: Grid, tol: f64) -> Result<Grid> {
    solve_in_place(&mut grid, tol, SWEEP_BUDGET)?;
    Ok(grid)
}

pub fn solve_in_place(grid: &mut Grid, tol: f64, budget: usize) -> Result<()> {
    let (lo, hi) = grid.remainder_range;
    if !(lo <= hi) {
        return Err(HypError::Construction("grid has no boundary data".into()));
    }
    let extent = (grid.nx.max(grid.ny) as f64) * grid.h;
    let omega = 2.0 / (1.0 + (std::f64::consts::PI * grid.h / extent).sin());
    let mut sweeps = 0;
    loop {
        let nx = grid.nx;
        let v = &mut grid.values;
        // within one color the updates are independent of each other
        for color in 0..2 {
            for &(k, rhs) in &grid.regular[color] {
                let target = rhs + 0.25 * (v[k + 1] + v[k - 1] + v[k + nx] + v[k - nx]);
                v[k] += omega * (target - v[k]);
            }
            for &idx in &grid.irregular[color] {
                let s = &grid.stencils[idx];
                let target = s.rhs
                    + s.weights[0] * v[s.arms[0]]
                    + s.weights[1] * v[s.arms[1]]
                    + s.weights[2] * v[s.arms[2]]
                    + s.weights[3] * v[s.arms[3]];
                v[s.node] += omega * (target - v[s.node]);
            }
        }
        sweeps += 1;
        if sweeps % 10 == 0 || sweeps >= budget {
            let r = grid.max_residual();
            grid.residual = r;
            if r <= tol {
                break;
            }
            if !r.is_finite() || sweeps >= budget {
                grid.sweeps = sweeps;
                return Err(HypError::NonConvergence { iterations: sweeps, residual: r });
            }
        }
    }
    grid.sweeps = sweeps;
    // The iterate may overshoot by about the residual; anything beyond that
    // is a genuine violation.
    let slack = 10.0 * tol;
    for s in &grid.stencils {
        let v = grid.values[s.node] - s.singular;
        if v < lo - slack || v > hi + slack {
            return Err(HypError::Range(format!("maximum principle violated: {v} outside [{lo}, {hi}]")));
        }
    }
    grid.solved = true;
    Ok(())
}
