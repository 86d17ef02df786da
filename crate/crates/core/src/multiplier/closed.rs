use super::{MultiplierSpec, Symbol};
use crate::bergman::check_alpha;
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// `M²_κ(α) = 36(α+3)(α+5) / ((α+2)(α+4))`, the squared norm of `S(κ)` from `A²_α` to `A²_{α+4}`.
pub fn koebe_norm_sq(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(36.0 * (alpha + 3.0) * (alpha + 5.0) / ((alpha + 2.0) * (alpha + 4.0)))
}

fn check_pair(alpha: f64, beta: f64) -> Result<()> {
    check_alpha(alpha)?;
    if !(beta.is_finite() && beta >= alpha) {
        return Err(Error::domain(format!("need beta >= alpha, got alpha = {alpha}, beta = {beta}")));
    }
    Ok(())
}

/// `Γ(β+2)/Γ(α+2) · [Γ(1+α/2)/Γ(1+β/2)]²`: the squared norm of `(1-z)^{-(β-α)/2}`
/// as a multiplier (equivalently of `J_g` for that symbol).
pub fn g2_norm_sq(alpha: f64, beta: f64) -> Result<f64> {
    check_pair(alpha, beta)?;
    let log = ln_gamma(beta + 2.0)? - ln_gamma(alpha + 2.0)?
        + 2.0 * (ln_gamma(1.0 + 0.5 * alpha)? - ln_gamma(1.0 + 0.5 * beta)?);
    Ok(log.exp())
}

/// `M²_{g₀}(α,β) = 2^{-(β-α)} Γ(β+2)/Γ(α+2) · [Γ(1+α/2)/Γ(1+β/2)]²` for `g₀ = (1-z²)^{-(β-α)/2}`.
pub fn g0_norm_sq(alpha: f64, beta: f64) -> Result<f64> {
    Ok(g2_norm_sq(alpha, beta)? * (alpha - beta).exp2())
}

/// Exact squared multiplier norm when the symbol belongs to a family with a
/// known closed form: constants, and unimodular rotations of `c·g₀` and `c·g₂`
/// with the critical exponent `(β-α)/2`.
pub fn closed_form_norm_sq(spec: &MultiplierSpec) -> Option<f64> {
    if let Some(c) = spec.symbol.as_constant() {
        // sup_n w_n(β)/w_n(α) = 1 at n = 0 when β ≥ α
        return Some(c.norm_sqr());
    }
    let gamma = spec.gamma();
    match &spec.symbol {
        Symbol::Binomial { scale, base, power, exponent }
            if (base.norm() - 1.0).abs() <= 1e-15 && (exponent - gamma).abs() <= 1e-15 * gamma.max(1.0) =>
        {
            let unit = match power {
                1 => g2_norm_sq(spec.alpha, spec.beta).ok()?,
                2 => g0_norm_sq(spec.alpha, spec.beta).ok()?,
                _ => return None,
            };
            Some(scale.norm_sqr() * unit)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn koebe_values() {
        let expect = [(0.0, 67.5), (1.0, 57.6), (2.0, 52.5)];
        for (a, v) in expect {
            assert!((koebe_norm_sq(a).unwrap() / v - 1.0).abs() < 1e-15);
        }
        assert!((koebe_norm_sq(1e9).unwrap() - 36.0).abs() < 1e-6);
        assert!(koebe_norm_sq(-1.5).is_err());
    }

    #[test]
    fn g0_values() {
        assert!((g0_norm_sq(0.0, 4.0).unwrap() - 1.875).abs() < 1e-13);
        assert!((g0_norm_sq(0.0, 2.0).unwrap() - 1.5).abs() < 1e-13);
        for a in [0.0, 1.0, 2.0] {
            let lhs = 36.0 * g0_norm_sq(a, a + 4.0).unwrap();
            assert!((lhs / koebe_norm_sq(a).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((g2_norm_sq(0.0, 4.0).unwrap() - 30.0).abs() < 1e-12);
        assert!(g0_norm_sq(1.0, 0.0).is_err());
    }

    #[test]
    fn recognizes_presets() {
        let spec = |name: &str| MultiplierSpec::new(0.0, 4.0, Symbol::preset(name, 0.0, 4.0).unwrap()).unwrap();
        assert!((closed_form_norm_sq(&spec("koebe-schwarzian")).unwrap() - 67.5).abs() < 1e-11);
        assert!((closed_form_norm_sq(&spec("g0")).unwrap() - 1.875).abs() < 1e-13);
        assert!((closed_form_norm_sq(&spec("g1")).unwrap() - 1.875).abs() < 1e-13);
        assert!((closed_form_norm_sq(&spec("g2")).unwrap() - 30.0).abs() < 1e-12);
        assert_eq!(closed_form_norm_sq(&spec("one")), Some(1.0));
        assert_eq!(closed_form_norm_sq(&spec("g3")), None);
        let rotated = spec("g0").symbol.rotate(0.3).scale(Complex64::new(0.0, 2.0));
        let s = MultiplierSpec::new(0.0, 4.0, rotated).unwrap();
        assert!((closed_form_norm_sq(&s).unwrap() - 7.5).abs() < 1e-12);
    }
}
