//! Growth exponents in the three model examples: the cusp, the slit
//! rectangle and the chain of annuli. Each produces table rows, an
//! optional log-log fit and a report.

use serde::{Deserialize, Serialize};

use crate::complex::c;
use crate::domains::{chain_annuli_lengths, gamma_path, DomainSpec};
use crate::error::{domain_err, HypError, Result};
use crate::geodesics::{crosscut_family, crosscut_k_estimate, crosscut_reach, SOLVER_TOL};
use crate::lengths::{fit_growth_exponent, GrowthFit};
use crate::quadrature::Quadrature;
use crate::report::{InequalityReport, TOL_CLOSED_FORM};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExampleSpec {
    /// `points` log-spaced abscissae `t ∈ [2, t_max]` on the cusp axis.
    Cusp { eps: f64, points: usize, t_max: f64 },
    /// Paths `Γ_0..Γ_{n−1}` through the slit rectangle; `m_gap` bounds the
    /// last horizontal piece.
    SlitRectangle { eps: f64, n: usize, m_gap: f64 },
    /// The chain geodesic after leaving `A_N`, for `points` log-spaced `N ≤ n`.
    Chain { beta: f64, n: usize, points: usize },
}

/// One table row: the parameter, `ℓ`, `E`, `H` and the bound it is held to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub param: f64,
    pub ell: f64,
    pub e: f64,
    pub h: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub rows: Vec<ExampleRow>,
    pub fit: Option<GrowthFit>,
    pub report: InequalityReport,
}

/// `n` points from `a` to `b`, equally spaced in `log`.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
}

pub fn check_example_exponents(spec: &ExampleSpec) -> Result<ExampleOutcome> {
    match *spec {
        ExampleSpec::Cusp { eps, points, t_max } => cusp(eps, points, t_max),
        ExampleSpec::SlitRectangle { eps, n, m_gap } => slits(eps, n, m_gap),
        ExampleSpec::Chain { beta, n, points } => chain(beta, n, points),
    }
}

/// Along `[2, t]` in the cusp `E(t) = t − 2`, and `ℓ(t)` lies between the
/// integrals of `1/(2 dist)` and `2/dist`. The upper one must stay below
/// `(E + 3)^{2+ε}`; the fitted exponent of `E` against it must be at least
/// `1/(2+ε) − 0.02`.
fn cusp(eps: f64, points: usize, t_max: f64) -> Result<ExampleOutcome> {
    if !(eps > 0.0 && eps <= 2.0) {
        return domain_err(format!("cusp exponent eps = {eps} must lie in (0, 2]"));
    }
    if points < 4 || !(t_max > 2.0) {
        return domain_err("cusp experiment needs at least 4 points beyond t = 2");
    }
    let domain = DomainSpec::Cusp { eps };
    let inv_dist = |t: f64| domain.boundary_distance(c(t, 0.0)).map(|d| 1.0 / d).unwrap_or(f64::NAN);
    let quad = Quadrature::new(1e-10).with_rel_tol(1e-11);
    let ts = log_spaced(2.0, t_max, points);
    let mut rows = Vec::with_capacity(points);
    let mut acc = 0.0;
    let mut prev = 2.0;
    let mut parts = Vec::new();
    for &t in &ts {
        acc += quad.integrate(inv_dist, prev, t)?.value;
        prev = t;
        let e = t - 2.0;
        let bound = (e + 3.0).powf(2.0 + eps);
        rows.push(ExampleRow { param: t, ell: 2.0 * acc, e, h: 0.5 * acc, bound });
        parts.push(InequalityReport::new("cusp_length", 2.0 * acc, bound, 0.0).param("t", t));
    }
    let fit = fit_growth_exponent(&rows.iter().filter(|r| r.e > 0.0).map(|r| (r.ell, r.e)).collect::<Vec<_>>())?;
    let floor = 1.0 / (2.0 + eps) - 0.02;
    parts.push(
        InequalityReport::new("cusp_exponent", floor, fit.exponent, 0.0)
            .param("exponent", fit.exponent)
            .param("decades", fit.decades),
    );
    let mut report = InequalityReport::combine("cusp", &parts).param("eps", eps).param("exponent", fit.exponent);
    if !fit.is_meaningful() {
        report = report.fail("the fit spans fewer than two decades of ell");
    }
    Ok(ExampleOutcome { rows, fit: Some(fit), report })
}

/// `h_ℓ(Γ_k)` from above by `2/dist`, held to `12(k+2)^{1+ε}`, and the sum
/// over `k < n` plus `m_gap` held to `6(n+2)^{2+ε} + m_gap`.
fn slits(eps: f64, n: usize, m_gap: f64) -> Result<ExampleOutcome> {
    if !(eps > 0.0 && eps <= 2.0) {
        return domain_err(format!("slit exponent eps = {eps} must lie in (0, 2]"));
    }
    if n == 0 || n > 400 {
        return domain_err(format!("number of paths {n} must lie in 1..=400"));
    }
    if !(m_gap >= 0.0 && m_gap.is_finite()) {
        return domain_err(format!("gap bound {m_gap} must be finite and nonnegative"));
    }
    let domain = DomainSpec::SlitRectangle { eps, n_slits: n + 3 };
    let quad = Quadrature::new(1e-9).with_rel_tol(1e-9).with_max_panels(20_000);
    let mut rows = Vec::with_capacity(n);
    let mut parts = Vec::new();
    let mut total = 0.0;
    for k in 0..n {
        let path = gamma_path(eps, k)?;
        let h = path.integrate(|w| domain.boundary_distance(w).map(|d| 2.0 / d).unwrap_or(f64::NAN), &quad)?;
        if !h.is_finite() {
            return Err(HypError::Range(format!("path {k} touches the boundary")));
        }
        total += h;
        let cap = 12.0 * (k as f64 + 2.0).powf(1.0 + eps);
        // E(r_{k+1}) ≥ k + 1 and ℓ(r_{k+1}) ≤ Σ_{j ≤ k} h_ℓ(Γ_j) + M
        rows.push(ExampleRow { param: k as f64, ell: total + m_gap, e: (k + 1) as f64, h, bound: cap });
        parts.push(InequalityReport::new("slit_path", h, cap, TOL_CLOSED_FORM).param("k", k as f64));
    }
    let cap_total = 6.0 * (n as f64 + 2.0).powf(2.0 + eps);
    parts.push(
        InequalityReport::new("slit_total", total + m_gap, cap_total + m_gap, TOL_CLOSED_FORM)
            .param("n", n as f64)
            .param("m_gap", m_gap),
    );
    let report = InequalityReport::combine("slits", &parts).param("eps", eps).param("total", total);
    Ok(ExampleOutcome { rows, fit: None, report })
}

/// Fits `E_N` against the exact `ℓ_N` and compares with `β/(β+1)`.
fn chain(beta: f64, n: usize, points: usize) -> Result<ExampleOutcome> {
    if !(beta > 0.0 && beta <= 4.0) {
        return domain_err(format!("chain exponent beta = {beta} must lie in (0, 4]"));
    }
    if n < 100 || points < 4 {
        return domain_err("chain experiment needs n >= 100 and at least 4 points");
    }
    let mut ns: Vec<usize> = log_spaced(10.0, n as f64, points).into_iter().map(|x| x.round() as usize).collect();
    ns.dedup();
    let target = beta / (beta + 1.0);
    let mut rows = Vec::with_capacity(ns.len());
    for &k in &ns {
        let (e, coarse, exact) = chain_annuli_lengths(beta, k)?;
        rows.push(ExampleRow { param: k as f64, ell: exact, e, h: coarse, bound: exact.powf(target) });
    }
    let fit = fit_growth_exponent(&rows.iter().map(|r| (r.ell, r.e)).collect::<Vec<_>>())?;
    let report = InequalityReport::new("chain", (fit.exponent - target).abs(), 0.05, 0.0)
        .param("beta", beta)
        .param("n", n as f64)
        .param("exponent", fit.exponent)
        .param("target", target)
        .param("decades", fit.decades)
        .note("E_N is fitted against the core-circle length per winding");
    Ok(ExampleOutcome { rows, fit: Some(fit), report })
}

/// Upper estimate for the hyperbolic distance from the center of a square
/// crosscut to where a geodesic meets it: the larger of the farthest
/// crossing over a seeded family at spacing `h` and `2 log(1/(1 − k))`,
/// the distance to the abscissa `k` no geodesic passes.
pub fn crosscut_gap_bound(seed: u64, count: usize, h: f64) -> Result<(f64, f64, f64)> {
    let family = crosscut_family(seed, count)?;
    let reach = crosscut_reach(&family, h, SOLVER_TOL)?.max_reach;
    let k = crosscut_k_estimate(h, SOLVER_TOL)?;
    let via_k = 2.0 * (1.0 / (1.0 - k)).ln();
    Ok((reach.max(via_k), reach, k))
}
