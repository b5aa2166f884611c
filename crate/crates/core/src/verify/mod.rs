//! The inequality laboratory: one check per inequality, each returning an
//! [`InequalityReport`], plus seeded test sets and a suite runner.

mod checks;
mod examples;
mod fermi;
mod probes;
mod suite;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{c, ComplexPoint};
use crate::series::PowerSeriesFunction;

pub use checks::{
    annulus_cover_radius, check_bounded_hyperbolic, check_covering_annulus, check_invariant_length, check_lipschitz,
    check_lp_growth, check_mz, check_neighborhood, check_omitted_point, check_ray_in_finite_area, mz_constant,
    omitted_point_constant, FiniteArea, ELL_CUTOFF,
};
pub use examples::{
    check_example_exponents, crosscut_gap_bound, log_spaced, ExampleOutcome, ExampleRow, ExampleSpec,
};
pub use fermi::{fermi_integral, fermi_point, RAY_CUTOFF};
pub use probes::{decay_probe, little_bloch_probe};
pub use suite::{family_names, run_family, run_suite, FamilyResult, SuiteOptions, DEFAULT_SEED};

/// Polynomial of the given degree with `a_n` uniform in the square of
/// half-side `1/n` (and `a_0` in the unit square).
pub fn random_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> PowerSeriesFunction {
    let coeffs: Vec<ComplexPoint> = (0..=degree.max(1))
        .map(|n| {
            let s = 1.0 / n.max(1) as f64;
            c(rng.gen_range(-s..=s), rng.gen_range(-s..=s))
        })
        .collect();
    PowerSeriesFunction::new(coeffs).expect("finite coefficients")
}

/// `count` seeded polynomials with degrees drawn from `1..=max_degree`.
pub fn polynomial_test_set(seed: u64, count: usize, max_degree: usize) -> Vec<PowerSeriesFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(1..=max_degree.max(1));
            random_polynomial(&mut rng, degree)
        })
        .collect()
}

/// Seeded polynomials together with a few fixed members of the Dirichlet
/// space: `z`, `z²/2`, and the long series `Σ_{n ≤ 200} n^{−3/2} e^{in} zⁿ`.
pub fn dirichlet_test_set(seed: u64) -> Vec<PowerSeriesFunction> {
    let mut set = vec![
        PowerSeriesFunction::identity(),
        PowerSeriesFunction::from_real(&[0.0, 0.0, 0.5]).expect("finite"),
        PowerSeriesFunction::new(
            (0..=200)
                .map(|n| if n == 0 { c(0.0, 0.0) } else { ComplexPoint::from_polar((n as f64).powf(-1.5), n as f64) })
                .collect(),
        )
        .expect("finite"),
    ];
    set.extend(polynomial_test_set(seed, 8, 10));
    set
}
