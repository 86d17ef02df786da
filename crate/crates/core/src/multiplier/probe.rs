use num_complex::Complex64;

use super::{compression_estimate, MultiplierSpec};
use crate::bergman::{bergman_norm_sq, disk_mean, NormEstimate, NormKind};
use crate::error::{Error, Result};
use crate::series::{series_multiply, PowerSeries};

/// Radial test functions `(1 - r z^k)^{-λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFamily {
    OneMinusRz,
    OneMinusRzSq,
}

impl TestFamily {
    pub fn power(self) -> usize {
        match self {
            TestFamily::OneMinusRz => 1,
            TestFamily::OneMinusRzSq => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TestFamily::OneMinusRz => "one_minus_rz",
            TestFamily::OneMinusRzSq => "one_minus_rz_sq",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "one_minus_rz" | "rz" => Ok(TestFamily::OneMinusRz),
            "one_minus_rz_sq" | "rz2" => Ok(TestFamily::OneMinusRzSq),
            _ => Err(Error::invalid(format!("unknown test family '{s}'"))),
        }
    }
}

/// One Rayleigh quotient `‖g·f‖²_β / ‖f‖²_α` for `f = (1 - r (e^{-iθ} z)^k)^{-λ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProbe {
    pub lambda: f64,
    pub r: f64,
    pub family: TestFamily,
    pub theta: f64,
    pub rayleigh_sq: f64,
    pub trunc: usize,
    pub residual: f64,
}

/// Minimum number of retained coefficients (per power of `z^k`).
const MIN_TEST_TRUNC: usize = 4096;
const TAIL_TOL: f64 = 1e-6;
const MAX_DOUBLINGS: usize = 4;

/// Rayleigh quotient of `M_g` at a test function concentrated at `e^{iθ}`.
///
/// Both norms are coefficient sums truncated at `N ≥ k·max(50/(1-r), 4096)`;
/// `N` doubles (up to four times) while the last retained term exceeds
/// `1e-6` of its sum.
pub fn test_family_rayleigh(
    spec: &MultiplierSpec,
    lambda: f64,
    r: f64,
    family: TestFamily,
    theta: f64,
) -> Result<RadialProbe> {
    if !(lambda.is_finite() && 2.0 * lambda > spec.alpha + 2.0) {
        return Err(Error::domain(format!(
            "test family needs 2*lambda > alpha + 2, got lambda = {lambda}, alpha = {}",
            spec.alpha
        )));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!("test family needs 0 <= r < 1, got {r}")));
    }
    let k = family.power();
    let base = Complex64::from_polar(r, -(k as f64) * theta);
    let mut n = k * ((50.0 / (1.0 - r)).ceil() as usize).max(MIN_TEST_TRUNC);
    let mut last_residual = f64::INFINITY;
    for _ in 0..=MAX_DOUBLINGS {
        let test = PowerSeries::binomial(base, k, lambda, n);
        let g = spec.symbol.expand(n)?;
        let prod = series_multiply(&g, &test);
        let num = bergman_norm_sq(&prod, spec.beta)?;
        let den = bergman_norm_sq(&test, spec.alpha)?;
        let rel = |e: &NormEstimate| if e.value_sq == 0.0 { 0.0 } else { e.residual / e.value_sq };
        let residual = rel(&num).max(rel(&den));
        if residual <= TAIL_TOL {
            return Ok(RadialProbe {
                lambda,
                r,
                family,
                theta,
                rayleigh_sq: num.value_sq / den.value_sq,
                trunc: n,
                residual,
            });
        }
        last_residual = residual;
        n *= 2;
    }
    Err(Error::numeric(
        format!("test-family tail still above {TAIL_TOL} at truncation {}; increase truncation", n / 2),
        last_residual,
    ))
}

/// `λ = α/2 + 1 + 10^{-k}`, `k = 1..=4`.
pub fn default_lambda_grid(alpha: f64) -> Vec<f64> {
    (1..=4).map(|k| 0.5 * alpha + 1.0 + 10f64.powi(-k)).collect()
}

pub const DEFAULT_R_GRID: [f64; 3] = [0.99, 0.999, 0.9999];

/// Best available lower bound for `M²_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub estimate: NormEstimate,
    pub compression: NormEstimate,
    pub best_probe: Option<RadialProbe>,
}

/// Maximum of the `n_cols`-column compression and the test-family Rayleigh
/// quotients over `lambdas × rs × thetas` (family `(1 - rz)^{-λ}`).
pub fn multiplier_lower_bound(
    spec: &MultiplierSpec,
    n_cols: usize,
    lambdas: &[f64],
    rs: &[f64],
    thetas: &[f64],
) -> Result<LowerBound> {
    let compression = compression_estimate(spec, n_cols)?;
    let mut best_probe: Option<RadialProbe> = None;
    for &lambda in lambdas {
        for &r in rs {
            for &theta in thetas {
                let p = test_family_rayleigh(spec, lambda, r, TestFamily::OneMinusRz, theta)?;
                if best_probe.is_none_or(|b| p.rayleigh_sq > b.rayleigh_sq) {
                    best_probe = Some(p);
                }
            }
        }
    }
    let estimate = match best_probe {
        Some(p) if p.rayleigh_sq > compression.value_sq => NormEstimate {
            value_sq: p.rayleigh_sq,
            kind: NormKind::LowerBound,
            trunc: p.trunc,
            residual: p.residual,
        },
        _ => compression,
    };
    Ok(LowerBound { estimate, compression, best_probe })
}

/// Remainder integrals whose uniform boundedness in `r` carries the lower-bound argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    T1,
    T2,
    T3,
    T4,
}

impl ClaimKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(ClaimKind::T1),
            "T2" => Ok(ClaimKind::T2),
            "T3" => Ok(ClaimKind::T3),
            "T4" => Ok(ClaimKind::T4),
            _ => Err(Error::invalid(format!("unknown integral kind '{s}'"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::T1 => "T1",
            ClaimKind::T2 => "T2",
            ClaimKind::T3 => "T3",
            ClaimKind::T4 => "T4",
        }
    }
}

const CLAIM_ANGLES: usize = 4096;

/// `(α+5)/π ∬ |A| |1-rz|^{-p} |1-re^{-iΘ}z|^{-q} (1-|z|²)^{α+4} dA` at each `r`,
/// with `(p, q)` = `(2λ+3, 0)`, `(2λ+2, 0)`, `(2λ+2, 1)`, `(2λ+2, 2)` for T1..T4.
pub fn claim_boundedness_probe<F: Fn(Complex64) -> Complex64>(
    a_fn: F,
    alpha: f64,
    lambda: f64,
    theta: f64,
    kind: ClaimKind,
    r_grid: &[f64],
) -> Result<Vec<f64>> {
    if !(alpha + 2.0 < 2.0 * lambda && 2.0 * lambda < alpha + 3.0) {
        return Err(Error::domain(format!(
            "need alpha + 2 < 2 lambda < alpha + 3, got alpha = {alpha}, lambda = {lambda}"
        )));
    }
    let rot = Complex64::from_polar(1.0, -theta);
    if matches!(kind, ClaimKind::T3 | ClaimKind::T4) && (rot - 1.0).norm() < 1e-12 {
        return Err(Error::domain("T3/T4 need exp(-i theta) != 1"));
    }
    let (p, q) = match kind {
        ClaimKind::T1 => (2.0 * lambda + 3.0, 0),
        ClaimKind::T2 => (2.0 * lambda + 2.0, 0),
        ClaimKind::T3 => (2.0 * lambda + 2.0, 1),
        ClaimKind::T4 => (2.0 * lambda + 2.0, 2),
    };
    r_grid
        .iter()
        .map(|&r| {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::domain(format!("r must lie in (0, 1), got {r}")));
            }
            let f = |z: Complex64| {
                let a = a_fn(z).norm();
                if a == 0.0 {
                    return 0.0;
                }
                let mut v = a * (1.0 - r * z).norm().powf(-p);
                if q > 0 {
                    v *= (1.0 - r * rot * z).norm().powi(-q);
                }
                v
            };
            let (value, _) = disk_mean(f, alpha + 4.0, CLAIM_ANGLES)?;
            Ok(value)
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::multiplier::{g0_norm_sq, koebe_norm_sq, Symbol};

    fn spec(name: &str) -> MultiplierSpec {
        MultiplierSpec::new(0.0, 4.0, Symbol::preset(name, 0.0, 4.0).unwrap()).unwrap()
    }

    #[test]
    fn constant_test_function() {
        let one = MultiplierSpec::new(0.0, 4.0, Symbol::constant(Complex64::new(1.0, 0.0))).unwrap();
        let p = test_family_rayleigh(&one, 1.5, 0.0, TestFamily::OneMinusRz, 0.0).unwrap();
        assert!((p.rayleigh_sq - 1.0).abs() < 1e-15);
        // r = 0: test ≡ 1 and the quotient is ‖g₀‖²_β
        let g0 = spec("g0");
        let p = test_family_rayleigh(&g0, 1.5, 0.0, TestFamily::OneMinusRzSq, 0.0).unwrap();
        let direct = bergman_norm_sq(&g0.symbol.expand(p.trunc).unwrap(), 4.0).unwrap().value_sq;
        assert!((p.rayleigh_sq - direct).abs() < 1e-10 * direct, "{} {}", p.rayleigh_sq, direct);
    }

    #[test]
    fn koebe_is_36_times_g0() {
        for r in [0.5, 0.9] {
            let a = test_family_rayleigh(&spec("g0"), 1.01, r, TestFamily::OneMinusRzSq, 0.0).unwrap();
            let b = test_family_rayleigh(&spec("koebe-schwarzian"), 1.01, r, TestFamily::OneMinusRzSq, 0.0).unwrap();
            assert!((b.rayleigh_sq / (36.0 * a.rayleigh_sq) - 1.0).abs() < 1e-9, "{} {}", a.rayleigh_sq, b.rayleigh_sq);
            assert!(a.rayleigh_sq <= g0_norm_sq(0.0, 4.0).unwrap());
            assert!(b.rayleigh_sq <= koebe_norm_sq(0.0).unwrap());
        }
    }

    #[test]
    fn domain_checks() {
        let s = spec("g0");
        assert!(test_family_rayleigh(&s, 1.0, 0.5, TestFamily::OneMinusRz, 0.0).is_err());
        assert!(test_family_rayleigh(&s, 1.1, 1.0, TestFamily::OneMinusRz, 0.0).is_err());
        assert!(TestFamily::parse("bogus").is_err());
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        assert!(claim_boundedness_probe(one, 0.0, 1.6, 0.0, ClaimKind::T2, &[0.5]).is_err());
        assert!(claim_boundedness_probe(one, 0.0, 1.2, 0.0, ClaimKind::T4, &[0.5]).is_err());
    }

    #[test]
    fn claim_integrals_stay_bounded() {
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        let grid = [0.9, 0.99, 0.999];
        let t2 = claim_boundedness_probe(one, 0.0, 1.2, 0.0, ClaimKind::T2, &grid).unwrap();
        let t4 = claim_boundedness_probe(one, 0.0, 1.2, PI, ClaimKind::T4, &grid).unwrap();
        for v in [&t2, &t4] {
            let hi = v.iter().cloned().fold(0.0, f64::max);
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(hi <= 2.0 * lo, "{v:?}");
        }
        let zero = claim_boundedness_probe(|_| Complex64::new(0.0, 0.0), 0.0, 1.2, 1.0, ClaimKind::T3, &grid).unwrap();
        assert!(zero.iter().all(|&x| x == 0.0));
    }
}
