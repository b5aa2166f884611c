//! Adaptive Gauss–Kronrod quadrature and periodic trapezoid averages.
//!
//! The adaptive rule is a global bisection scheme on the 10/21-point
//! Gauss–Kronrod pair: the interval with the largest local error estimate is
//! split until the summed estimate meets the tolerance. Integrable endpoint
//! singularities are resolved by the repeated bisection toward the endpoint.
//! For integrands that blow up like `1/(1 - t)` near `t = 1` use
//! [`integrate_radial`], which switches to the variable `t = 1 - 2^{-u}`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, HypError, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
    resabs: f64,
}

fn kronrod21<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> Result<Panel<V>> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[10];
    let mut gauss = V::zero();
    let mut resabs = WGK[10] * fc.magnitude();
    let mut fv1 = [V::zero(); 10];
    let mut fv2 = [V::zero(); 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        kron = kron + sum * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + sum * WG[j / 2];
        }
    }
    if !kron.is_finite_value() || !fc.is_finite_value() {
        return domain_err(format!("integrand is not finite on [{a}, {b}]"));
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let abs_half = half.abs();
    let value = kron * half;
    let raw = ((kron - gauss) * half).magnitude();
    resabs *= abs_half;
    resasc *= abs_half;
    let mut error = raw;
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        resabs,
    })
}

/// Tolerance and budget for [`Quadrature::integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self::new(DEFAULT_TOL)
    }
}

impl Quadrature {
    pub fn new(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol: 0.0,
            max_panels: 4000,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadratureResult> {
        let (value, error_estimate, evaluations) = self.integrate_generic(&f, a, b)?;
        Ok(QuadratureResult {
            value,
            error_estimate,
            evaluations,
        })
    }

    /// Complex-valued integrand; returns `(value, error estimate)`.
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F, a: f64, b: f64) -> Result<(Complex64, f64)> {
        let (v, e, _) = self.integrate_generic(&f, a, b)?;
        Ok((v, e))
    }

    fn integrate_generic<V: QuadValue, F: Fn(f64) -> V>(&self, f: &F, a: f64, b: f64) -> Result<(V, f64, usize)> {
        if !(a.is_finite() && b.is_finite()) {
            return domain_err("integration limits must be finite");
        }
        if a > b {
            return domain_err(format!("integration limits reversed: {a} > {b}"));
        }
        if a == b {
            return Ok((V::zero(), 0.0, 0));
        }
        let mut panels = vec![kronrod21(f, a, b)?];
        let mut evaluations = 21;
        loop {
            let mut total = V::zero();
            let mut err = 0.0;
            let mut resabs = 0.0;
            for p in &panels {
                total = total + p.value;
                err += p.error;
                resabs += p.resabs;
            }
            let target = self.abs_tol.max(self.rel_tol * total.magnitude());
            // roundoff floor: further splitting cannot lower the estimate
            if err <= target || err <= 100.0 * f64::EPSILON * resabs {
                return Ok((total, err, evaluations));
            }
            let worst = panels
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    let mid = 0.5 * (p.a + p.b);
                    mid > p.a && mid < p.b
                })
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .map(|(i, _)| i);
            let Some(i) = worst else {
                // every panel is at the resolution limit of f64
                return Ok((total, err, evaluations));
            };
            if panels.len() >= self.max_panels {
                return Err(HypError::BudgetExceeded {
                    value: total.magnitude(),
                    error_estimate: err,
                    evaluations,
                });
            }
            let p = panels.swap_remove(i);
            let mid = 0.5 * (p.a + p.b);
            panels.push(kronrod21(f, p.a, mid)?);
            panels.push(kronrod21(f, mid, p.b)?);
            evaluations += 42;
        }
    }
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    Quadrature::new(tol).integrate(f, a, b)
}

/// `∫_0^r g(t) dt` for `0 ≤ r < 1` where `g` may grow like `1/(1 - t)`.
///
/// The piece beyond `t = 1/2` is integrated in the variable `u` with
/// `t = 1 - 2^{-u}`, so accuracy is uniform in `log 1/(1 - r)`. The
/// integrand receives both `t` and `1 − t`; the latter is exact in the
/// substituted variable, so integrands that need it near 1 should use it.
pub fn integrate_radial<F: Fn(f64, f64) -> f64>(g: F, r: f64, quad: &Quadrature) -> Result<QuadratureResult> {
    if !(0.0..1.0).contains(&r) {
        return domain_err(format!("radial endpoint {r} not in [0, 1)"));
    }
    if r <= 0.5 {
        return quad.integrate(|t| g(t, 1.0 - t), 0.0, r);
    }
    integrate_radial_dyadic(g, -(1.0 - r).log2(), quad)
}

/// `∫_0^{1 − 2^{−u_end}} g(t) dt` with the same substitution as
/// [`integrate_radial`]; `u_end ≥ 1` may exceed what `r` can represent.
pub fn integrate_radial_dyadic<F: Fn(f64, f64) -> f64>(g: F, u_end: f64, quad: &Quadrature) -> Result<QuadratureResult> {
    if !(u_end >= 1.0 && u_end.is_finite()) {
        return domain_err(format!("dyadic endpoint {u_end} must be finite and >= 1"));
    }
    let head = quad.integrate(|t| g(t, 1.0 - t), 0.0, 0.5)?;
    let ln2 = std::f64::consts::LN_2;
    let tail = quad.integrate(
        |u: f64| {
            let s = (-u * ln2).exp();
            g(1.0 - s, s) * ln2 * s
        },
        1.0,
        u_end,
    )?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
    })
}

/// Mean of a `2π`-periodic function by the trapezoid rule, doubling the
/// number of nodes until successive estimates agree to `tol` (absolute or
/// relative to the mean's size, whichever is looser).
pub fn periodic_mean<V: QuadValue, F: Fn(f64) -> V>(f: F, tol: f64, max_points: usize) -> Result<V> {
    let tau = std::f64::consts::TAU;
    let mut n = 16usize;
    let mut sum = V::zero();
    for k in 0..n {
        sum = sum + f(tau * k as f64 / n as f64);
    }
    let mut mean = sum * (1.0 / n as f64);
    while n < max_points {
        let mut extra = V::zero();
        for k in 0..n {
            extra = extra + f(tau * (k as f64 + 0.5) / n as f64);
        }
        sum = sum + extra;
        n *= 2;
        let next = sum * (1.0 / n as f64);
        if !next.is_finite_value() {
            return domain_err("periodic integrand is not finite");
        }
        let change = (next - mean).magnitude();
        mean = next;
        if change <= tol.max(tol * mean.magnitude()) {
            return Ok(mean);
        }
    }
    Err(HypError::BudgetExceeded {
        value: mean.magnitude(),
        error_estimate: f64::NAN,
        evaluations: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_integrand() {
        let r = integrate_adaptive(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-14);
        assert!(r.error_estimate >= 0.0);
    }

    #[test]
    fn disc_density_gives_log3() {
        let r = integrate_adaptive(|t| 2.0 / (1.0 - t * t), 0.0, 0.5, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 3f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        // antiderivative 2√t
        let r = integrate_adaptive(|t| 1.0 / t.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn radial_substitution_resolves_boundary_blowup() {
        let q = Quadrature::new(1e-12);
        for r in [0.3, 0.9, 0.999, 1.0 - 1e-9] {
            let got = integrate_radial(|t, s| 2.0 / (s * (1.0 + t)), r, &q).unwrap();
            let exact = ((1.0 + r) / (1.0 - r)).ln();
            assert!((got.value - exact).abs() < 1e-9 * exact.max(1.0), "r={r}: {} vs {exact}", got.value);
        }
    }

    #[test]
    fn budget_exceeded_carries_partial_value() {
        let q = Quadrature::new(1e-14).with_max_panels(3);
        let err = q.integrate(|t: f64| (50.0 * t).sin().abs(), 0.0, 10.0).unwrap_err();
        assert!(matches!(err, HypError::BudgetExceeded { value, .. } if value > 0.0));
    }

    #[test]
    fn reversed_limits_rejected() {
        assert!(integrate_adaptive(|t| t, 1.0, 0.0, 1e-10).is_err());
    }

    #[test]
    fn tighter_tolerance_never_raises_error_estimate() {
        let f = |t: f64| (3.0 * t).exp() * (7.0 * t).cos() / (1.0 + t);
        let mut last = f64::INFINITY;
        for tol in [1e-3, 1e-5, 1e-7, 1e-9, 1e-11] {
            let r = integrate_adaptive(f, 0.0, 2.0, tol).unwrap();
            assert!(r.error_estimate <= last);
            last = r.error_estimate;
        }
    }

    #[test]
    fn periodic_mean_of_trig_polynomial() {
        let m: f64 = periodic_mean(|t: f64| 3.0 + (2.0 * t).cos() + (5.0 * t).sin(), 1e-14, 1 << 12).unwrap();
        assert_abs_diff_eq!(m, 3.0, epsilon = 1e-14);
    }
}
