//! Geodesics crossing the middle of a square: domains `D ⊃ (−1,1)²` whose
//! boundary contains the two vertical sides of the square, and how far
//! along the crosscut `(−1,1) × {0}` their geodesics can meet it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{c, ComplexPoint};
use crate::error::{HypError, Result};
use crate::quadrature::Quadrature;

use super::grid::{solve_in_place, Grid, GridDomain, SWEEP_BUDGET};
use super::level::extract_half_level;
use super::shapes::PolygonDomain;

/// Rectangles `[a, b] × [1, 1 + h]` on top of and `[a, b] × [−1 − h, −1]`
/// below the square `(−1,1)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareExtension {
    pub top: Option<(f64, f64, f64)>,
    pub bottom: Option<(f64, f64, f64)>,
}

/// One member of the test family: an extended square and the arc carrying
/// the data 1, as an arc-length interval along its boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosscutSample {
    pub extension: SquareExtension,
    pub domain: PolygonDomain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscutSummary {
    pub h: f64,
    /// Largest upper-density distance from the origin of a crossing.
    pub max_reach: f64,
    /// Largest `|x|` of a crossing.
    pub max_abscissa: f64,
    /// Per sample: crossing abscissae (empty for skipped samples).
    pub crossings: Vec<Vec<f64>>,
    pub skipped: usize,
}

/// The extended square, counterclockwise from `(−1, −1)`. The default arc is
/// the right side of the square.
pub fn square_with_bumps(ext: &SquareExtension) -> Result<PolygonDomain> {
    let mut v = vec![c(-1.0, -1.0)];
    if let Some((a, b, h)) = ext.bottom {
        check_bump(a, b, h)?;
        v.extend([c(a, -1.0), c(a, -1.0 - h), c(b, -1.0 - h), c(b, -1.0)]);
    }
    v.push(c(1.0, -1.0));
    v.push(c(1.0, 1.0));
    if let Some((a, b, h)) = ext.top {
        check_bump(a, b, h)?;
        v.extend([c(b, 1.0), c(b, 1.0 + h), c(a, 1.0 + h), c(a, 1.0)]);
    }
    v.push(c(-1.0, 1.0));
    let poly = PolygonDomain::new(v, (0.0, 1.0))?;
    let s0 = poly.param_of(c(1.0, -1.0));
    poly.with_arc((s0, s0 + 2.0))
}

fn check_bump(a: f64, b: f64, h: f64) -> Result<()> {
    if !(-1.5..=1.5).contains(&a) || !(-1.5..=1.5).contains(&b) || b - a < 0.1 || !(h > 0.0) {
        return Err(HypError::Construction(format!("bad extension [{a}, {b}] of height {h}")));
    }
    Ok(())
}

/// Seeded family of extended squares with random boundary arcs whose
/// endpoints lie on the top or bottom chains, never on the vertical sides.
/// Extension coordinates are multiples of 1/16 so that grids of spacing
/// `2^{−k}`, `k ≥ 4`, have nodes on every edge.
pub fn crosscut_family(seed: u64, count: usize) -> Result<Vec<CrosscutSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let sixteenth = |rng: &mut ChaCha8Rng, lo: i32, hi: i32| rng.gen_range(lo..=hi) as f64 / 16.0;
    for _ in 0..count {
        let bump = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.2) {
                return None;
            }
            let a = sixteenth(rng, -24, 16);
            let b = (a + sixteenth(rng, 4, 24)).min(1.5);
            Some((a, b, sixteenth(rng, 2, 8)))
        };
        let extension = SquareExtension { top: bump(&mut rng), bottom: bump(&mut rng) };
        let base = square_with_bumps(&extension)?;
        let bottom = (0.0, base.param_of(c(1.0, -1.0)));
        let top = (base.param_of(c(1.0, 1.0)), base.param_of(c(-1.0, 1.0)));
        let pick = |rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)| {
            let pad = 0.05 * (hi - lo);
            rng.gen_range(lo + pad..hi - pad)
        };
        let (p, q) = (pick(&mut rng, bottom), pick(&mut rng, top));
        let arc = match rng.gen_range(0..3) {
            // through the right side
            0 => (p, q),
            // through the left side
            1 => (q, p + base.perimeter()),
            // both endpoints on the top chain
            _ => {
                let r = pick(&mut rng, top);
                (q.min(r), q.max(r) + 1e-3)
            }
        };
        out.push(CrosscutSample { extension, domain: base.with_arc(arc)? });
    }
    Ok(out)
}

/// Upper-density hyperbolic distance from the origin to `(x, 0)` in
/// `domain`, integrating `2/dist` along the crosscut.
pub fn crosscut_distance(domain: &PolygonDomain, x: f64) -> Result<f64> {
    let quad = Quadrature::new(1e-10).with_rel_tol(1e-10);
    let s = x.signum();
    Ok(quad
        .integrate(|t| 2.0 / domain.boundary_distance(c(s * t, 0.0)), 0.0, x.abs())?
        .value)
}

fn crossings(sample: &CrosscutSample, grid: &Grid) -> Result<Vec<f64>> {
    let level = match extract_half_level(grid) {
        Ok(l) => l,
        Err(HypError::NotFound(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let level = match level.clip(&sample.domain, 3.0 * grid.h) {
        Ok(l) => l,
        Err(HypError::NotFound(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(level
        .crossings_y(0.0)
        .into_iter()
        .filter(|p: &ComplexPoint| p.re.abs() < 1.0)
        .map(|p| p.re)
        .collect())
}

fn summarize(family: &[CrosscutSample], h: f64, per_sample: Vec<Vec<f64>>) -> Result<CrosscutSummary> {
    let mut max_reach: f64 = 0.0;
    let mut max_abscissa: f64 = 0.0;
    let mut skipped = 0;
    for (sample, xs) in family.iter().zip(&per_sample) {
        if xs.is_empty() {
            skipped += 1;
        }
        for &x in xs {
            max_reach = max_reach.max(crosscut_distance(&sample.domain, x)?);
            max_abscissa = max_abscissa.max(x.abs());
        }
    }
    Ok(CrosscutSummary { h, max_reach, max_abscissa, crossings: per_sample, skipped })
}

/// Solves every member at spacing `h` and reports the farthest crossing.
pub fn crosscut_reach(family: &[CrosscutSample], h: f64, tol: f64) -> Result<CrosscutSummary> {
    let per_sample = family
        .par_iter()
        .map(|s| {
            let mut g = Grid::new(&s.domain, h)?;
            solve_in_place(&mut g, tol, SWEEP_BUDGET)?;
            crossings(s, &g)
        })
        .collect::<Result<Vec<_>>>()?;
    summarize(family, h, per_sample)
}

/// Runs the family at `2h` and at `h`, seeding each fine solve from the
/// coarse one. Returns `(coarse, fine)`.
pub fn crosscut_reach_at(family: &[CrosscutSample], h: f64, tol: f64) -> Result<(CrosscutSummary, CrosscutSummary)> {
    let both = family
        .par_iter()
        .map(|s| {
            let mut coarse = Grid::new(&s.domain, 2.0 * h)?;
            solve_in_place(&mut coarse, tol, SWEEP_BUDGET)?;
            let mut fine = Grid::new(&s.domain, h)?;
            fine.warm_start(&coarse);
            solve_in_place(&mut fine, tol, SWEEP_BUDGET)?;
            Ok((crossings(s, &coarse)?, crossings(s, &fine)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (coarse, fine): (Vec<_>, Vec<_>) = both.into_iter().unzip();
    Ok((summarize(family, 2.0 * h, coarse)?, summarize(family, h, fine)?))
}

/// The rectangle `E = (0,1) × (−½,½)` with data 1 on its right side.
pub fn half_square() -> Result<PolygonDomain> {
    PolygonDomain::new(vec![c(0.0, -0.5), c(1.0, -0.5), c(1.0, 0.5), c(0.0, 0.5)], (1.0, 2.0))
}

/// Where the geodesic of `E` joining `(1, ±½)` meets the real axis. No
/// geodesic of an admissible `D` meets `[k, 1) × {0}`.
pub fn crosscut_k_estimate(h: f64, tol: f64) -> Result<f64> {
    let e = half_square()?;
    let mut g = Grid::new(&e, h)?;
    solve_in_place(&mut g, tol, SWEEP_BUDGET)?;
    let eta = extract_half_level(&g)?.clip(&e, 3.0 * h)?;
    eta.crossings_y(0.0)
        .into_iter()
        .map(|p| p.re)
        .reduce(f64::max)
        .ok_or_else(|| HypError::NotFound("the geodesic of E misses the real axis".into()))
}
