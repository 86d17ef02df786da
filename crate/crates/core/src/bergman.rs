//! Norms of analytic functions on the unit disk.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::PanelRule;
use crate::series::{FactoredRational, PowerSeries, RationalMap};
use crate::specfun::ln_gamma;
use crate::sum::KahanSum;

/// Weight exponent of `A²_α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub alpha: f64,
}

impl SpaceParams {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha })
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::domain(format!("weight exponent must satisfy alpha > -1, got {alpha}")));
    }
    Ok(())
}

/// `w_n(α) = ‖zⁿ‖²_α = n! Γ(α+2) / Γ(n+α+2)` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialWeights {
    pub alpha: f64,
    pub w: Vec<f64>,
}

impl MonomialWeights {
    pub fn new(alpha: f64, n_max: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let mut w = Vec::with_capacity(n_max + 1);
        let mut cur = 1.0;
        w.push(cur);
        for n in 0..n_max {
            cur *= (n + 1) as f64 / (n as f64 + alpha + 2.0);
            w.push(cur);
        }
        Ok(Self { alpha, w })
    }
}

pub fn monomial_weight(alpha: f64, n: usize) -> Result<f64> {
    Ok(*MonomialWeights::new(alpha, n)?.w.last().expect("n_max + 1 weights"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    LowerBound,
    ClosedForm,
    Quadrature,
    Series,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::LowerBound => "lower-bound",
            NormKind::ClosedForm => "closed-form",
            NormKind::Quadrature => "quadrature",
            NormKind::Series => "series",
        }
    }
}

/// A squared norm with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value_sq: f64,
    pub kind: NormKind,
    pub trunc: usize,
    pub residual: f64,
}

impl NormEstimate {
    pub fn closed_form(value_sq: f64) -> Self {
        Self { value_sq, kind: NormKind::ClosedForm, trunc: 0, residual: 0.0 }
    }

    pub fn value(&self) -> f64 {
        self.value_sq.sqrt()
    }
}

/// `Σ w_n(α) |a_n|²`, ascending with compensated summation.
pub fn bergman_norm_sq(phi: &PowerSeries, alpha: f64) -> Result<NormEstimate> {
    let weights = MonomialWeights::new(alpha, phi.trunc())?;
    Ok(weighted_sum(phi.coeffs(), &weights.w))
}

pub(crate) fn weighted_sum(coeffs: &[Complex64], w: &[f64]) -> NormEstimate {
    let mut acc = KahanSum::new();
    let mut last = 0.0;
    for (c, wn) in coeffs.iter().zip(w) {
        last = wn * c.norm_sqr();
        acc.add(last);
    }
    NormEstimate {
        value_sq: acc.value(),
        kind: NormKind::Series,
        trunc: coeffs.len() - 1,
        residual: last,
    }
}

/// `|a_0|² + ‖φ'‖²_α`.
pub fn dirichlet_norm_sq(phi: &PowerSeries, alpha: f64) -> Result<NormEstimate> {
    check_alpha(alpha)?;
    let a0 = phi.coeffs()[0].norm_sqr();
    if phi.trunc() == 0 {
        return Ok(NormEstimate { value_sq: a0, kind: NormKind::Series, trunc: 0, residual: 0.0 });
    }
    let d = bergman_norm_sq(&phi.derivative(), alpha)?;
    let mut acc = KahanSum::new();
    acc.add(a0);
    acc.add(d.value_sq);
    Ok(NormEstimate { value_sq: acc.value(), trunc: phi.trunc(), ..d })
}

const TEST_TAIL_TOL: f64 = 1e-14;

/// `‖(1 - r z^k)^{-λ}‖²_α` by its coefficient series.
///
/// Starts at `N = k·max(4096, 40/(1-r))` coefficients and doubles (at most
/// eight times) until the last nonzero term, inflated by `1/(1-r²)` as a
/// geometric tail bound, is below `1e-14` of the sum. The residual is that bound.
pub fn test_function_norm_sq(lambda: f64, r: f64, k: usize, alpha: f64) -> Result<NormEstimate> {
    check_alpha(alpha)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain(format!("exponent must be positive, got {lambda}")));
    }
    if !(0.0..1.0).contains(&r) || k == 0 {
        return Err(Error::domain(format!("need 0 <= r < 1 and k >= 1, got r = {r}, k = {k}")));
    }
    let mut n = k * ((40.0 / (1.0 - r)).ceil() as usize).max(4096);
    let mut tail = f64::INFINITY;
    for _ in 0..=8 {
        let f = PowerSeries::binomial(Complex64::new(r, 0.0), k, lambda, n);
        let est = bergman_norm_sq(&f, alpha)?;
        let last = monomial_weight(alpha, n)? * f.coeffs()[n].norm_sqr();
        tail = last / (1.0 - r * r);
        if tail <= TEST_TAIL_TOL * est.value_sq {
            return Ok(NormEstimate { residual: tail, ..est });
        }
        n *= 2;
    }
    Err(Error::numeric(format!("test-function series not settled at {} terms", n / 2), tail))
}

/// `lim_{r→1} (1-r²)^{2λ-α-2} ‖(1 - r z^k)^{-λ}‖²_α = Γ(α+2) Γ(2λ-α-2) / (k^{α+1} Γ(λ)²)` for `2λ > α + 2`.
pub fn test_function_asymptotic_constant(lambda: f64, k: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let e = 2.0 * lambda - alpha - 2.0;
    if !(e > 0.0) || k == 0 {
        return Err(Error::domain(format!("need 2*lambda > alpha + 2 and k >= 1, got lambda = {lambda}, alpha = {alpha}")));
    }
    let ln = ln_gamma(alpha + 2.0)? + ln_gamma(e)? - 2.0 * ln_gamma(lambda)? - (alpha + 1.0) * (k as f64).ln();
    Ok(ln.exp())
}

/// Radii `1 - 2^{-k}`, `k = 0..=30`.
pub const GROWTH_LEVELS: usize = 30;
pub const GROWTH_ANGLES: usize = 4096;

/// Grid estimate of `sup |g(z)| (1 - |z|²)^γ` over the disk, from below.
///
/// The grid uses radii `1 - 2^{-k}`, `k ≤ 30`, and 4096 equally spaced angles.
pub fn growth_norm<F: Fn(Complex64) -> Complex64>(g: F, gamma_exp: f64) -> Result<f64> {
    if !(gamma_exp.is_finite() && gamma_exp >= 0.0) {
        return Err(Error::domain(format!("growth exponent must be >= 0, got {gamma_exp}")));
    }
    let mut best: f64 = 0.0;
    for k in 0..=GROWTH_LEVELS {
        let r = 1.0 - (-(k as f64)).exp2();
        // 1 - r² = 2^{-k}(2 - 2^{-k}) without cancellation
        let h = (-(k as f64)).exp2();
        let weight = (h * (2.0 - h)).powf(gamma_exp);
        let n_ang = if k == 0 { 1 } else { GROWTH_ANGLES };
        for j in 0..n_ang {
            let z = Complex64::from_polar(r, TAU * j as f64 / GROWTH_ANGLES as f64);
            let v = g(z).norm();
            if !v.is_finite() {
                return Err(Error::invalid(format!("symbol is not finite at z = {z}")));
            }
            best = best.max(v * weight);
        }
    }
    Ok(best)
}

/// [`growth_norm`] for a rational map, rejecting poles in the open disk.
pub fn growth_norm_rational(g: &RationalMap, gamma_exp: f64) -> Result<f64> {
    if let Some(p) = g.poles()?.into_iter().find(|p| p.norm() < 1.0) {
        return Err(Error::invalid(format!("rational symbol has a pole at {p} inside the disk")));
    }
    let f = FactoredRational::new(g)?;
    growth_norm(|z| f.eval(z), gamma_exp)
}

/// Radial panels toward the boundary and angular nodes of the disk rule.
const DISK_PANELS: usize = 16;
const DISK_NODES_PER_PANEL: usize = 16;
const DISK_ANGLES: usize = 1024;

/// `(α+1)/π ∬ |g|² (1-|z|²)^α dA` by direct quadrature.
///
/// With `t = (1-|z|²)^{α+1}` the weight is absorbed exactly and the norm
/// becomes the plain mean of `|g|²` over `t ∈ (0,1)` and the circle. The `t`
/// axis is split into 16 dyadic panels toward `t = 0` (the boundary) with 16
/// Gauss–Legendre nodes each; the angle uses a 1024-point trapezoid. The
/// residual is the change against the 512-point angular rule.
pub fn disk_quadrature_norm_sq<F: Fn(Complex64) -> Complex64>(g: F, alpha: f64) -> Result<NormEstimate> {
    let (value_sq, residual) = disk_mean(|z| g(z).norm_sqr(), alpha, DISK_ANGLES)?;
    Ok(NormEstimate {
        value_sq,
        kind: NormKind::Quadrature,
        trunc: DISK_PANELS * DISK_NODES_PER_PANEL,
        residual,
    })
}

/// `(α+1)/π ∬ f (1-|z|²)^α dA` with the rule of [`disk_quadrature_norm_sq`]
/// and `angles` trapezoid nodes; returns the value and the change against
/// half the angular nodes.
pub(crate) fn disk_mean<F: Fn(Complex64) -> f64>(f: F, alpha: f64, angles: usize) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let mut breaks = vec![0.0];
    for k in (0..DISK_PANELS).rev() {
        breaks.push((-(k as f64)).exp2());
    }
    let rule = PanelRule::new(&breaks, DISK_NODES_PER_PANEL);
    let circle: Vec<Complex64> = (0..angles)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / angles as f64))
        .collect();
    let mut fine = KahanSum::new();
    let mut coarse = KahanSum::new();
    for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let s = t.powf(1.0 / (alpha + 1.0));
        let rho = (1.0 - s).max(0.0).sqrt();
        let mut ring_fine = KahanSum::new();
        let mut ring_coarse = KahanSum::new();
        for (j, u) in circle.iter().enumerate() {
            let v = f(u * rho);
            if !v.is_finite() {
                return Err(Error::numeric(format!("non-finite sample at |z| = {rho}"), f64::INFINITY));
            }
            ring_fine.add(v);
            if j % 2 == 0 {
                ring_coarse.add(v);
            }
        }
        fine.add(wt * ring_fine.value() / angles as f64);
        coarse.add(wt * ring_coarse.value() / (angles / 2) as f64);
    }
    let value = fine.value();
    Ok((value, (value - coarse.value()).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Polynomial;
    use crate::specfun::gamma;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn weights() {
        assert_eq!(monomial_weight(3.3, 0).unwrap(), 1.0);
        assert!((monomial_weight(0.0, 1).unwrap() - 0.5).abs() < 1e-16);
        for n in 0..200 {
            let w = monomial_weight(0.0, n).unwrap();
            assert!((w - 1.0 / (n + 1) as f64).abs() <= 1e-13 / (n + 1) as f64);
        }
        // against Gamma quotients
        for &alpha in &[-0.5, 1.0, 2.5] {
            for n in [1usize, 7, 40] {
                let direct = gamma(n as f64 + 1.0).unwrap().log_value + gamma(alpha + 2.0).unwrap().log_value
                    - gamma(n as f64 + alpha + 2.0).unwrap().log_value;
                let w = monomial_weight(alpha, n).unwrap();
                assert!((w / direct.exp() - 1.0).abs() < 1e-12);
            }
        }
        assert!(monomial_weight(-1.0, 3).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(bergman_norm_sq(&PowerSeries::from_real(&[1.0]), 0.7).unwrap().value_sq, 1.0);
        assert_eq!(bergman_norm_sq(&PowerSeries::from_real(&[0.0, 1.0]), 0.0).unwrap().value_sq, 0.5);
        let phi = PowerSeries::binomial(c(0.5), 1, 2.0, 200);
        let n = bergman_norm_sq(&phi, 0.0).unwrap();
        assert!((n.value_sq - 16.0 / 9.0).abs() < 1e-14);
        assert_eq!(n.kind, NormKind::Series);
        assert!(n.residual < 1e-50);
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_norm_sq(&PowerSeries::from_real(&[1.0]), 0.0).unwrap().value_sq, 1.0);
        assert_eq!(dirichlet_norm_sq(&PowerSeries::from_real(&[0.0, 1.0]), 0.0).unwrap().value_sq, 1.0);
        assert_eq!(dirichlet_norm_sq(&PowerSeries::from_real(&[0.0, 0.0, 1.0]), 0.0).unwrap().value_sq, 2.0);
    }

    #[test]
    fn growth_examples() {
        assert_eq!(growth_norm(|_| c(1.0), 0.0).unwrap(), 1.0);
        let s_koebe = |z: Complex64| -6.0 / ((1.0 - z * z) * (1.0 - z * z));
        assert!((growth_norm(s_koebe, 2.0).unwrap() - 6.0).abs() < 1e-9);
        let g0 = |z: Complex64| (1.0 - z * z).powf(-2.0);
        assert!((growth_norm(g0, 2.0).unwrap() - 1.0).abs() < 1e-9);
        assert!(growth_norm(|z| 1.0 / (z - 2.0), 1.0).is_ok());
        assert!(growth_norm(|z| 1.0 / z, 1.0).is_err());
        let inside = RationalMap::new(Polynomial::one(), Polynomial::from_real(&[-0.3, 1.0])).unwrap();
        assert!(matches!(growth_norm_rational(&inside, 1.0), Err(Error::InvalidInput(_))));
        let koebe_s = RationalMap::new(Polynomial::from_real(&[-6.0]), Polynomial::from_real(&[1.0, 0.0, -2.0, 0.0, 1.0])).unwrap();
        assert!((growth_norm_rational(&koebe_s, 2.0).unwrap() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn disk_quadrature_examples() {
        let one = disk_quadrature_norm_sq(|_| c(1.0), 0.0).unwrap();
        assert!((one.value_sq - 1.0).abs() < 1e-10);
        let z = disk_quadrature_norm_sq(|z| z, 0.0).unwrap();
        assert!((z.value_sq - 0.5).abs() < 1e-8);
        let g = disk_quadrature_norm_sq(|z| (1.0 - 0.5 * z).powi(-2), 0.0).unwrap();
        assert!((g.value_sq - 16.0 / 9.0).abs() < 1e-6);
    }

    #[test]
    fn quadrature_matches_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alphas = [-0.5, 0.0, 1.0, 2.5];
        for case in 0..50 {
            let deg = rng.gen_range(0..=12);
            let coeffs: Vec<Complex64> = (0..=deg)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let phi = PowerSeries::new(coeffs);
            let alpha = alphas[case % alphas.len()];
            let series = bergman_norm_sq(&phi, alpha).unwrap().value_sq;
            let quad = disk_quadrature_norm_sq(|z| phi.eval(z), alpha).unwrap().value_sq;
            assert!((series - quad).abs() <= 1e-6 * series, "case {case}: {series} vs {quad}");
        }
    }

    #[test]
    fn rotation_and_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let coeffs: Vec<Complex64> = (0..10)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let phi = PowerSeries::new(coeffs);
            let base = bergman_norm_sq(&phi, 0.5).unwrap().value_sq;
            let rot = bergman_norm_sq(&phi.rotate(rng.gen_range(0.0..TAU)), 0.5).unwrap().value_sq;
            assert!((base - rot).abs() <= 1e-14 * base);
            let mut prev = f64::INFINITY;
            for alpha in [-0.9, -0.5, 0.0, 1.0, 3.0, 10.0] {
                let v = bergman_norm_sq(&phi, alpha).unwrap().value_sq;
                assert!(v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn test_function_norms() {
        for r in [0.5, 0.9, 0.999] {
            let n = test_function_norm_sq(2.0, r, 1, 0.0).unwrap();
            assert!((n.value_sq * (1.0 - r * r).powi(2) - 1.0).abs() < 1e-10, "{r}: {n:?}");
        }
        assert!((test_function_asymptotic_constant(2.0, 1, 0.0).unwrap() - 1.0).abs() < 1e-14);
        let c = test_function_asymptotic_constant(1.6, 1, 0.0).unwrap();
        let r: f64 = 0.9999;
        let n = test_function_norm_sq(1.6, r, 1, 0.0).unwrap();
        let ratio = n.value_sq * (1.0 - r * r).powf(1.2) / c;
        assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
        // z² family picks up 2^{-(α+1)}
        let c2 = test_function_asymptotic_constant(1.6, 2, 0.0).unwrap();
        let n2 = test_function_norm_sq(1.6, r, 2, 0.0).unwrap();
        assert!((n2.value_sq * (1.0 - r * r).powf(1.2) / c2 - 1.0).abs() < 0.02);
        assert!(test_function_asymptotic_constant(1.0, 1, 0.0).is_err());
    }
}
