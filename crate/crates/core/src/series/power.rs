use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Truncated Taylor series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

/// Below this many output coefficients the Cauchy product is done directly.
const DIRECT_PRODUCT_LIMIT: usize = 256;

impl PowerSeries {
    /// A series needs at least one coefficient; `trunc = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a power series carries at least c_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); trunc + 1])
    }

    pub fn constant(c: Complex64, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `(1 - a z^k)^{-γ}` truncated at `trunc`; `γ` may be any real number.
    pub fn binomial(a: Complex64, k: usize, gamma_exp: f64, trunc: usize) -> Self {
        assert!(k >= 1);
        let base = crate::specfun::binomial_coeffs_unchecked(gamma_exp, trunc / k);
        let mut s = Self::zero(trunc);
        let mut apow = Complex64::new(1.0, 0.0);
        for (n, b) in base.iter().enumerate() {
            s.coeffs[n * k] = apow * *b;
            apow *= a;
        }
        s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Keep only `c_0..=c_n` (never extends).
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.trunc());
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficientwise `c_n a^n`, i.e. `g(a z)`.
    pub fn substitute_scaled(&self, a: Complex64) -> Self {
        let mut apow = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * apow);
            apow *= a;
        }
        Self::new(out)
    }

    /// `g(a z)` for `|a| < 1`.
    pub fn dilate(&self, a: Complex64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::domain(format!("dilation needs |a| < 1, got |a| = {}", a.norm())));
        }
        Ok(self.substitute_scaled(a))
    }

    /// `g(e^{iθ} z)`.
    pub fn rotate(&self, theta: f64) -> Self {
        self.substitute_scaled(Complex64::from_polar(1.0, theta))
    }

    /// Term-by-term derivative; truncation drops by one (a constant series stays length one).
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Primitive vanishing at 0; all coefficients up to `N + 1` are determined.
    pub fn primitive(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        for (k, &c) in self.coeffs.iter().enumerate() {
            out.push(c / (k + 1) as f64);
        }
        Self::new(out)
    }

    /// `self / other` by the usual recurrence; needs `other(0) != 0`.
    pub fn divide(&self, other: &PowerSeries) -> Result<Self> {
        let d0 = other.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::invalid("series division by a series vanishing at 0"));
        }
        let n = self.trunc().min(other.trunc());
        let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / d0;
        }
        Ok(Self::new(q))
    }

    pub fn add(&self, other: &PowerSeries) -> Self {
        let n = self.trunc().min(other.trunc());
        Self::new((0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &PowerSeries) -> Self {
        let n = self.trunc().min(other.trunc());
        Self::new((0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect())
    }

    /// Largest `|c_n|` over the last few retained terms; a crude tail indicator.
    pub fn tail_magnitude(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[n.saturating_sub(4)..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Cauchy product truncated at `min(a.trunc, b.trunc)`.
///
/// Long products go through a zero-padded FFT; the rounding error is then
/// absolute, of order `ε ‖a‖₂ ‖b‖₂ log N` per coefficient.
pub fn series_multiply(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    let n = a.trunc().min(b.trunc()) + 1;
    let (ac, bc) = (&a.coeffs[..n], &b.coeffs[..n]);
    if n <= DIRECT_PRODUCT_LIMIT {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, x) in ac.iter().enumerate() {
            if x.norm() == 0.0 {
                continue;
            }
            for (j, y) in bc[..n - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return PowerSeries::new(out);
    }
    let len = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    let mut fa = vec![Complex64::new(0.0, 0.0); len];
    let mut fb = vec![Complex64::new(0.0, 0.0); len];
    fa[..n].copy_from_slice(ac);
    fb[..n].copy_from_slice(bc);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let scale = 1.0 / len as f64;
    fa.truncate(n);
    for x in fa.iter_mut() {
        *x *= scale;
    }
    PowerSeries::new(fa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn difference_of_squares() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 0.0]);
        let b = PowerSeries::from_real(&[1.0, -1.0, 0.0]);
        assert_eq!(series_multiply(&a, &b), PowerSeries::from_real(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn geometric_squared() {
        let g = PowerSeries::binomial(c(1.0), 1, 1.0, 20);
        let sq = series_multiply(&g, &g);
        for (n, v) in sq.coeffs().iter().enumerate() {
            assert_eq!(*v, c(n as f64 + 1.0));
        }
    }

    #[test]
    fn times_zero() {
        let a = PowerSeries::from_real(&[1.0, 2.0, 3.0]);
        assert!(series_multiply(&a, &PowerSeries::zero(2)).is_zero());
    }

    #[test]
    fn truncation_takes_minimum() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 1.0, 1.0]);
        let b = PowerSeries::from_real(&[1.0, 1.0]);
        assert_eq!(series_multiply(&a, &b).trunc(), 1);
    }

    #[test]
    fn fft_path_matches_direct() {
        let n = 3000;
        let g = PowerSeries::binomial(c(0.999), 1, 1.3, n);
        let h = PowerSeries::binomial(c(1.0), 2, 2.0, n);
        let fast = series_multiply(&g, &h);
        // direct product for a few coefficients
        for k in [0usize, 1, 17, 1000, 2999, 3000] {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                acc += g.coeffs()[j] * h.coeffs()[k - j];
            }
            assert!((fast.coeffs()[k] - acc).norm() <= 1e-9 * acc.norm().max(1.0), "k = {k}");
        }
    }

    #[test]
    fn division_inverts_product() {
        let a = PowerSeries::binomial(c(0.5), 1, 2.0, 30);
        let b = PowerSeries::from_real(&[2.0, -1.0, 0.5, 0.0, 0.25, 0.0, 0.0, 0.0]);
        let q = series_multiply(&a, &b).divide(&b).unwrap();
        for k in 0..=q.trunc() {
            assert!((q.coeffs()[k] - a.coeffs()[k]).norm() < 1e-12);
        }
        assert!(a.divide(&PowerSeries::from_real(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn dilation() {
        let g = PowerSeries::binomial(c(1.0), 1, 1.0, 10);
        assert_eq!(g.dilate(c(0.0)).unwrap().coeffs()[1..], vec![c(0.0); 10][..]);
        let half = g.dilate(c(0.5)).unwrap();
        for (n, v) in half.coeffs().iter().enumerate() {
            assert!((v - c(0.5f64.powi(n as i32))).norm() < 1e-15);
        }
        assert!(g.dilate(c(1.0)).is_err());
    }

    fn series_strategy(len: usize) -> impl Strategy<Value = PowerSeries> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
            .prop_map(|v| PowerSeries::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn commutative_and_associative(a in series_strategy(12), b in series_strategy(12), d in series_strategy(12)) {
            let ab = series_multiply(&a, &b);
            let ba = series_multiply(&b, &a);
            let l = series_multiply(&ab, &d);
            let r = series_multiply(&a, &series_multiply(&b, &d));
            for k in 0..12 {
                prop_assert!((ab.coeffs()[k] - ba.coeffs()[k]).norm() <= 1e-12);
                prop_assert!((l.coeffs()[k] - r.coeffs()[k]).norm() <= 1e-12);
            }
        }
    }
}
