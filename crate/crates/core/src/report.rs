//! The verification record shared by every check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Tolerance for checks whose sides are closed forms or single quadratures.
pub const TOL_CLOSED_FORM: f64 = 1e-9;
/// Tolerance for checks with a two-dimensional quadrature on one side.
pub const TOL_DOUBLE_QUADRATURE: f64 = 1e-6;

/// One named inequality `lhs ≤ rhs`. `slack = rhs − lhs`, and
/// `pass ⟺ slack ≥ −tolerance`; the tolerance is stored in `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub params: BTreeMap<String, f64>,
    pub notes: String,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        let mut params = BTreeMap::new();
        params.insert("tolerance".to_string(), tolerance);
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            // NaN on either side never passes
            pass: slack >= -tolerance,
            params,
            notes: String::new(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.params.get("tolerance").copied().unwrap_or(0.0)
    }

    /// Re-evaluates `pass` under a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.params.insert("tolerance".to_string(), tolerance);
        self.pass = self.slack >= -tolerance;
        self
    }

    pub fn param(mut self, key: impl Into<String>, value: f64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn note(mut self, text: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
        self
    }

    /// Marks the report failed regardless of its slack (a side condition broke).
    pub fn fail(mut self, reason: impl AsRef<str>) -> Self {
        self.pass = false;
        self.note(reason)
    }

    /// Collapses several reports into one: it passes iff all parts pass and
    /// carries the sides of the part with the smallest slack relative to
    /// its own tolerance. An empty list fails.
    pub fn combine(name: impl Into<String>, parts: &[InequalityReport]) -> Self {
        let name = name.into();
        let Some(worst) = parts
            .iter()
            .min_by(|a, b| (a.slack + a.tolerance()).total_cmp(&(b.slack + b.tolerance())))
        else {
            return InequalityReport::new(name, f64::NAN, f64::NAN, 0.0).fail("no cases evaluated");
        };
        let failures = parts.iter().filter(|p| !p.pass).count();
        let mut out = InequalityReport::new(name, worst.lhs, worst.rhs, worst.tolerance())
            .param("cases", parts.len() as f64)
            .param("failures", failures as f64);
        for (k, v) in &worst.params {
            if k != "tolerance" {
                out.params.insert(format!("worst.{k}"), *v);
            }
        }
        out.pass = failures == 0;
        if !worst.notes.is_empty() {
            out = out.note(format!("worst case: {}", worst.notes));
        }
        if failures > 0 {
            let names: Vec<&str> = parts.iter().filter(|p| !p.pass).map(|p| p.name.as_str()).take(5).collect();
            out = out.note(format!("failing: {}", names.join(", ")));
        }
        out
    }
}
