//! Finite surrogates for the little-o statements: monotone decay along the
//! dyadic radius ladder `r_j = 1 − 2^{−j}`.

use crate::complex::c;
use crate::error::Result;
use crate::lengths::{ell, euclidean_length_radial};
use crate::report::InequalityReport;
use crate::series::PowerSeriesFunction;

fn ladder(j_range: (u32, u32)) -> Vec<(u32, f64)> {
    (j_range.0..=j_range.1).map(|j| (j, 1.0 - (-(j as f64)).exp2())).collect()
}

/// Largest relative step up of a sequence that should not increase.
fn largest_rise(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| (w[1] - w[0]) / w[0].abs().max(f64::MIN_POSITIVE))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `E(r_j)/√ℓ(r_j)` is nonincreasing for `j` in `j_range`.
pub fn decay_probe(f: &PowerSeriesFunction, j_range: (u32, u32)) -> Result<InequalityReport> {
    let mut ratios = Vec::new();
    for (_, r) in ladder(j_range) {
        let e = euclidean_length_radial(f, r, 0.0, 1e-13)?;
        ratios.push(e / ell(r)?.sqrt());
    }
    Ok(InequalityReport::new("decay", largest_rise(&ratios), 0.0, 1e-12)
        .param("j_first", j_range.0 as f64)
        .param("j_last", j_range.1 as f64)
        .param("first_ratio", ratios[0])
        .param("last_ratio", *ratios.last().unwrap()))
}

/// `|f'(r_j)|/λ(r_j)` decreases strictly for `j` in `j_range`.
pub fn little_bloch_probe(f: &PowerSeriesFunction, j_range: (u32, u32)) -> Result<InequalityReport> {
    let values: Vec<f64> = ladder(j_range)
        .into_iter()
        .map(|(j, r)| {
            let gap = (-(j as f64)).exp2();
            f.eval_deriv_unchecked(c(r, 0.0)).1.norm() * 0.5 * gap * (1.0 + r)
        })
        .collect();
    let rise = largest_rise(&values);
    let mut rep = InequalityReport::new("little_bloch", rise, 0.0, 0.0)
        .param("j_first", j_range.0 as f64)
        .param("j_last", j_range.1 as f64)
        .param("last_value", *values.last().unwrap());
    if rise == 0.0 {
        rep = rep.fail("scale factor is not strictly decreasing");
    }
    Ok(rep)
}
