//! Hyperbolic densities, length functionals and inequality checks for
//! analytic maps of the unit disc.
//!
//! The crate is organized bottom-up: [`complex`], [`moebius`], [`series`],
//! [`maps`], [`curve`] and [`quadrature`] form the numerical substrate;
//! [`metrics`] and [`domains`] evaluate densities and geometry;
//! [`lengths`] and [`geodesics`] compute the length functionals and
//! harmonic-measure geodesics; [`verify`] turns everything into named
//! [`InequalityReport`]s.

pub mod complex;
pub mod curve;
pub mod domains;
pub mod error;
pub mod geodesics;
pub mod lengths;
pub mod maps;
pub mod metrics;
pub mod moebius;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod verify;

pub use complex::{c, ComplexPoint};
pub use curve::Curve;
pub use domains::{DomainSpec, StolzRegion};
pub use error::{HypError, Result};
pub use maps::{AnalyticMap, AnnulusCover};
pub use metrics::DensityEstimate;
pub use moebius::MoebiusMap;
pub use quadrature::{integrate_adaptive, Quadrature, QuadratureResult};
pub use report::InequalityReport;
pub use series::PowerSeriesFunction;
pub use verify::{run_suite, SuiteOptions};
