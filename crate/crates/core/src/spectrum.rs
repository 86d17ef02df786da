//! Integral means `∫|f′(re^{iθ})|^t dθ` and the growth exponent of those means
//! as `r → 1`, estimated by regression over a dyadic radius grid.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::KahanSum;

const MEAN_REL_TOL: f64 = 1e-6;
const MIN_NODES: usize = 256;
/// Cap on angular nodes.
pub const MAX_NODES: usize = 1 << 20;

/// Least-squares fit of `log I(r)` against `-log(1-r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFit {
    pub t: f64,
    pub r_grid: Vec<f64>,
    pub integrals: Vec<f64>,
    pub slope: f64,
    pub stderr: f64,
}

/// Periodic trapezoid sum of `|f′(re^{iθ})|^t` over `n` equally spaced angles.
fn trapezoid<F: Fn(Complex64) -> Complex64>(f_prime: &F, t: f64, r: f64, n: usize) -> Result<f64> {
    let mut acc = KahanSum::new();
    for j in 0..n {
        let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
        let m = f_prime(z).norm();
        let v = if t == 0.0 { 1.0 } else { m.powf(t) };
        if !v.is_finite() {
            return Err(Error::domain(format!("|f'|^{t} is not finite at z = {z}; f' vanishes or has a pole on the circle")));
        }
        acc.add(v);
    }
    Ok(2.0 * PI * acc.value() / n as f64)
}

/// `∫_0^{2π} |f′(re^{iθ})|^t dθ` by the periodic trapezoid rule.
///
/// Starts from `max(256, ~4/(1-r))` nodes so that a boundary feature of width
/// `1-r` is sampled from the outset, then doubles until the relative change
/// drops below `1e-6`.
pub fn integral_mean<F: Fn(Complex64) -> Complex64>(f_prime: F, t: f64, r: f64) -> Result<f64> {
    Ok(integral_mean_trace(f_prime, t, r)?.0)
}

/// Same as [`integral_mean`], also returning the relative change of every refinement.
pub fn integral_mean_trace<F: Fn(Complex64) -> Complex64>(f_prime: F, t: f64, r: f64) -> Result<(f64, Vec<f64>)> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("exponent must be finite, got {t}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let mut n = MIN_NODES.max((4.0 / (1.0 - r)).ceil() as usize).next_power_of_two().min(MAX_NODES / 2);
    let mut prev = trapezoid(&f_prime, t, r, n)?;
    let mut changes = Vec::new();
    while n < MAX_NODES {
        n *= 2;
        let next = trapezoid(&f_prime, t, r, n)?;
        let change = (next - prev).abs() / next.abs();
        changes.push(change);
        if change < MEAN_REL_TOL {
            return Ok((next, changes));
        }
        prev = next;
    }
    Err(Error::numeric(
        format!("integral mean at r = {r} not settled with {MAX_NODES} nodes"),
        *changes.last().unwrap_or(&f64::INFINITY),
    ))
}

/// Slope of `log ∫|f′(r_k e^{iθ})|^t dθ` against `-log(1-r_k)` over `r_k = 1 - 2^{-k}`.
pub fn spectrum_slope<F: Fn(Complex64) -> Complex64>(f_prime: F, t: f64, ks: &[u32]) -> Result<SpectrumFit> {
    if ks.len() < 2 {
        return Err(Error::invalid("need at least two radii for a slope"));
    }
    if ks.windows(2).any(|w| w[0] >= w[1]) || ks[0] == 0 || *ks.last().unwrap() > 40 {
        return Err(Error::invalid("radius levels must be increasing and within 1..=40"));
    }
    let r_grid: Vec<f64> = ks.iter().map(|&k| 1.0 - 0.5f64.powi(k as i32)).collect();
    let integrals = r_grid
        .iter()
        .map(|&r| integral_mean(&f_prime, t, r))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = integrals.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::numeric("integral mean is not positive", *bad));
    }
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64 * 2f64.ln()).collect();
    let ys: Vec<f64> = integrals.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    let stderr = if xs.len() > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(SpectrumFit { t, r_grid, integrals, slope, stderr })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(_: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn koebe_prime(z: Complex64) -> Complex64 {
        (1.0 + z) / (1.0 - z).powi(3)
    }

    #[test]
    fn constant_derivative() {
        for (t, r) in [(1.0, 0.5), (-2.0, 0.99), (3.5, 0.1)] {
            assert!((integral_mean(one, t, r).unwrap() - 2.0 * PI).abs() < 1e-12);
        }
        let fit = spectrum_slope(one, 1.0, &[6, 7, 8]).unwrap();
        assert!(fit.slope.abs() < 1e-12);
    }

    #[test]
    fn koebe_ratios() {
        let ratio = integral_mean(koebe_prime, -2.0, 0.995).unwrap() / integral_mean(koebe_prime, -2.0, 0.99).unwrap();
        assert!((ratio / 2.0 - 1.0).abs() < 0.15, "{ratio}");
        let ratio = integral_mean(koebe_prime, 1.0, 0.995).unwrap() / integral_mean(koebe_prime, 1.0, 0.99).unwrap();
        assert!((ratio / 4.0 - 1.0).abs() < 0.15, "{ratio}");
    }

    #[test]
    fn refinements_shrink() {
        let (_, changes) = integral_mean_trace(koebe_prime, -2.0, 0.999).unwrap();
        assert!(changes.windows(2).all(|w| w[1] < w[0]), "{changes:?}");
    }

    #[test]
    fn koebe_slopes() {
        let ks: Vec<u32> = (6..=14).collect();
        let brennan = spectrum_slope(koebe_prime, -2.0, &ks).unwrap();
        assert!((brennan.slope - 1.0).abs() < 0.1, "{brennan:?}");
        let growth = spectrum_slope(koebe_prime, 1.0, &ks).unwrap();
        assert!((growth.slope - 2.0).abs() < 0.1, "{growth:?}");
    }

    #[test]
    fn rotation_invariance() {
        let theta = 0.7;
        let rot = Complex64::from_polar(1.0, theta);
        let ks = [6, 8, 10];
        let a = spectrum_slope(koebe_prime, 1.0, &ks).unwrap();
        let b = spectrum_slope(|z| rot * koebe_prime(rot * z), 1.0, &ks).unwrap();
        assert!((a.slope - b.slope).abs() < 1e-9);
    }

    #[test]
    fn vanishing_derivative_rejected() {
        // f′ vanishes at z = 0.5, which is a node of the r = 0.5 circle
        let f = |z: Complex64| z - Complex64::new(0.5, 0.0);
        assert!(integral_mean(f, -1.0, 0.5).is_err());
        assert!(integral_mean(one, 1.0, 1.0).is_err());
        assert!(spectrum_slope(one, 1.0, &[6]).is_err());
    }
}
