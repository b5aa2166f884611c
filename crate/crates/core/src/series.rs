//! Truncated Taylor series on the unit disc.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{c, ensure_finite, ensure_in_disc, ComplexPoint};
use crate::error::{domain_err, Result};
use crate::maps::AnalyticMap;

/// `f(z) = Σ_{n=0}^{N} a_n z^n`. The truncation defines the function; there is no tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeriesFunction {
    coeffs: Vec<ComplexPoint>,
}

impl PowerSeriesFunction {
    /// Coefficients `a_0..a_N`; shorter inputs are zero-padded so that `N ≥ 1`.
    pub fn new(mut coeffs: Vec<ComplexPoint>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain_err("power series needs at least one coefficient");
        }
        for a in &coeffs {
            ensure_finite(*a)?;
        }
        if coeffs.len() < 2 {
            coeffs.push(c(0.0, 0.0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| c(a, 0.0)).collect())
    }

    /// `f(z) = z`
    pub fn identity() -> Self {
        Self {
            coeffs: vec![c(0.0, 0.0), c(1.0, 0.0)],
        }
    }

    pub fn coeffs(&self) -> &[ComplexPoint] {
        &self.coeffs
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of `f` and `f'` at any finite `z`.
    pub fn eval_deriv_unchecked(&self, z: ComplexPoint) -> (ComplexPoint, ComplexPoint) {
        let mut value = c(0.0, 0.0);
        let mut deriv = c(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + a;
        }
        (value, deriv)
    }

    /// `π Σ n |a_n|^2`, the area of `f(𝔻)` counted with multiplicity.
    pub fn area(&self) -> f64 {
        PI * self.dirichlet_tail(1)
    }

    /// `Σ_{n ≥ from} n |a_n|^2`
    pub fn dirichlet_tail(&self, from: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(from)
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }

    /// The series with coefficients `|a_n|`.
    pub fn abs_coefficients(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| c(a.norm(), 0.0)).collect(),
        }
    }

    /// Upper bound for `sup_{|z|<1} |f(z)|`.
    pub fn coefficient_l1(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }
}

impl AnalyticMap for PowerSeriesFunction {
    fn eval_deriv(&self, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
        ensure_in_disc(z)?;
        Ok(self.eval_deriv_unchecked(z))
    }
}

/// Value and derivative of `f` at `z`, `|z| < 1`.
pub fn series_eval_deriv(f: &PowerSeriesFunction, z: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
    f.eval_deriv(z)
}

pub fn series_area(f: &PowerSeriesFunction) -> f64 {
    f.area()
}
