use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{FactoredRational, Polynomial, PowerSeries, RationalMap};
use crate::specfun::binomial_coeffs_unchecked;

/// Analytic symbol `g` of a multiplication operator.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// Truncated Taylor series; coefficients past the truncation are unknown.
    Series(PowerSeries),
    Rational(RationalMap),
    /// `scale · (1 - base·z^power)^{-exponent}`.
    Binomial { scale: Complex64, base: Complex64, power: usize, exponent: f64 },
    /// `scale · ∫_0^z (1 - base·t)^{-exponent} dt`.
    BinomialPrimitive { scale: Complex64, base: Complex64, exponent: f64 },
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Symbol {
    pub fn constant(c: Complex64) -> Self {
        Symbol::Rational(RationalMap::from_poly(Polynomial::constant(c)))
    }

    /// Named symbols; `γ = (β - α)/2`.
    ///
    /// | name | symbol |
    /// |---|---|
    /// | `one` | `1` |
    /// | `koebe-schwarzian` | `-6 (1 - z²)^{-2}` |
    /// | `g0` | `(1 - z²)^{-γ}` |
    /// | `g1` | `2^{-γ} (1 - z)^{-γ}` |
    /// | `g2` | `(1 - z)^{-γ}` |
    /// | `g3` | `∫_0^z (1 - t)^{-γ} dt` |
    pub fn preset(name: &str, alpha: f64, beta: f64) -> Result<Self> {
        let gamma = 0.5 * (beta - alpha);
        let binom = |scale: f64, power, exponent| Symbol::Binomial {
            scale: Complex64::new(scale, 0.0),
            base: ONE,
            power,
            exponent,
        };
        Ok(match name {
            "one" => Symbol::constant(ONE),
            "koebe-schwarzian" => binom(-6.0, 2, 2.0),
            "g0" => binom(1.0, 2, gamma),
            "g1" => binom((-gamma).exp2(), 1, gamma),
            "g2" => binom(1.0, 1, gamma),
            "g3" => Symbol::BinomialPrimitive { scale: ONE, base: ONE, exponent: gamma },
            _ => return Err(Error::invalid(format!("unknown symbol preset '{name}'"))),
        })
    }

    /// Reject symbols with singularities in the open disk.
    pub fn check_analytic(&self) -> Result<()> {
        match self {
            Symbol::Series(_) => Ok(()),
            Symbol::Rational(r) => match r.poles()?.into_iter().find(|p| p.norm() < 1.0) {
                Some(p) => Err(Error::invalid(format!("symbol has a pole at {p} inside the disk"))),
                None => Ok(()),
            },
            Symbol::Binomial { base, exponent, .. } | Symbol::BinomialPrimitive { base, exponent, .. } => {
                // rotations of a unimodular base land a rounding error away from the circle
                if base.norm() > 1.0 + 1e-12 && *exponent != 0.0 {
                    Err(Error::invalid("binomial symbol is singular inside the disk (|base| > 1)"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Taylor coefficients up to `z^n`.
    pub fn expand(&self, n: usize) -> Result<PowerSeries> {
        match self {
            Symbol::Series(s) => {
                if s.trunc() < n {
                    return Err(Error::invalid(format!(
                        "series symbol is truncated at {}, coefficients up to {n} are needed",
                        s.trunc()
                    )));
                }
                Ok(s.truncated(n))
            }
            Symbol::Rational(r) => r.expand(n),
            Symbol::Binomial { scale, base, power, exponent } => {
                Ok(PowerSeries::binomial(*base, *power, *exponent, n).scale(*scale))
            }
            Symbol::BinomialPrimitive { scale, base, exponent } => {
                let b = binomial_coeffs_unchecked(*exponent, n.saturating_sub(1));
                let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
                let mut bpow = *scale;
                for k in 1..=n {
                    c[k] = bpow * (b[k - 1] / k as f64);
                    bpow *= base;
                }
                Ok(PowerSeries::new(c))
            }
        }
    }

    /// Point evaluation (principal branches for non-integer exponents).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Series(s) => s.eval(z),
            Symbol::Rational(r) => r.eval(z),
            Symbol::Binomial { scale, base, power, exponent } => {
                scale * (ONE - base * z.powu(*power as u32)).powf(-exponent)
            }
            Symbol::BinomialPrimitive { scale, base, exponent } => {
                if base.norm() == 0.0 {
                    return scale * z;
                }
                let w = ONE - base * z;
                let v = if (*exponent - 1.0).abs() == 0.0 {
                    -w.ln() / base
                } else {
                    (w.powf(1.0 - exponent) - ONE) / (base * (exponent - 1.0))
                };
                scale * v
            }
        }
    }

    /// Evaluator that stays accurate next to boundary poles of rational symbols.
    pub fn evaluator(&self) -> Result<Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>> {
        Ok(match self {
            Symbol::Rational(r) => {
                let f = FactoredRational::new(r)?;
                Box::new(move |z| f.eval(z))
            }
            other => {
                let s = other.clone();
                Box::new(move |z| s.eval(z))
            }
        })
    }

    /// `g(a z)`; `|a| < 1`.
    pub fn dilate(&self, a: Complex64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::domain(format!("dilation needs |a| < 1, got |a| = {}", a.norm())));
        }
        Ok(self.substitute(a))
    }

    /// `g(e^{iθ} z)`.
    pub fn rotate(&self, theta: f64) -> Self {
        self.substitute(Complex64::from_polar(1.0, theta))
    }

    fn substitute(&self, a: Complex64) -> Self {
        match self {
            Symbol::Series(s) => Symbol::Series(s.substitute_scaled(a)),
            Symbol::Rational(r) => {
                let sub = |p: &Polynomial| {
                    let mut apow = ONE;
                    Polynomial::new(
                        p.coeffs()
                            .iter()
                            .map(|&c| {
                                let v = c * apow;
                                apow *= a;
                                v
                            })
                            .collect(),
                    )
                };
                Symbol::Rational(RationalMap::new(sub(r.num()), sub(r.den())).expect("nonzero denominator"))
            }
            Symbol::Binomial { scale, base, power, exponent } => Symbol::Binomial {
                scale: *scale,
                base: base * a.powu(*power as u32),
                power: *power,
                exponent: *exponent,
            },
            Symbol::BinomialPrimitive { scale, base, exponent } => Symbol::BinomialPrimitive {
                scale: scale * a,
                base: base * a,
                exponent: *exponent,
            },
        }
    }

    /// `c · g`.
    pub fn scale(&self, c: Complex64) -> Self {
        match self {
            Symbol::Series(s) => Symbol::Series(s.scale(c)),
            Symbol::Rational(r) => Symbol::Rational(r.scale(c)),
            Symbol::Binomial { scale, base, power, exponent } => Symbol::Binomial {
                scale: scale * c,
                base: *base,
                power: *power,
                exponent: *exponent,
            },
            Symbol::BinomialPrimitive { scale, base, exponent } => Symbol::BinomialPrimitive {
                scale: scale * c,
                base: *base,
                exponent: *exponent,
            },
        }
    }

    /// `g'`. Series symbols lose one coefficient; binomials in `z^k`, `k > 1`,
    /// are expanded to `trunc + 1` coefficients first.
    pub fn derivative(&self, trunc: usize) -> Result<Self> {
        Ok(match self {
            Symbol::Series(s) => Symbol::Series(s.derivative()),
            Symbol::Rational(r) => Symbol::Rational(r.derivative()?),
            Symbol::Binomial { scale, base, power: 1, exponent } => {
                if *exponent == 0.0 || base.norm() == 0.0 {
                    Symbol::constant(Complex64::new(0.0, 0.0))
                } else {
                    Symbol::Binomial {
                        scale: scale * base * *exponent,
                        base: *base,
                        power: 1,
                        exponent: exponent + 1.0,
                    }
                }
            }
            Symbol::Binomial { .. } => Symbol::Series(self.expand(trunc + 1)?.derivative()),
            Symbol::BinomialPrimitive { scale, base, exponent } => Symbol::Binomial {
                scale: *scale,
                base: *base,
                power: 1,
                exponent: *exponent,
            },
        })
    }

    /// `true` when the symbol is identically zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Symbol::Series(s) => s.is_zero(),
            Symbol::Rational(r) => r.is_zero(),
            Symbol::Binomial { scale, .. } | Symbol::BinomialPrimitive { scale, .. } => scale.norm() == 0.0,
        }
    }

    /// `Some(c)` when the symbol is a known constant.
    pub fn as_constant(&self) -> Option<Complex64> {
        match self {
            Symbol::Rational(r) if r.num().degree() == 0 && r.den().degree() == 0 => {
                Some(r.num().coeffs().first().copied().unwrap_or_default() / r.den().coeffs()[0])
            }
            Symbol::Binomial { scale, base, exponent, .. } if *exponent == 0.0 || base.norm() == 0.0 => Some(*scale),
            Symbol::BinomialPrimitive { scale, .. } if scale.norm() == 0.0 => Some(*scale),
            _ => None,
        }
    }
}

/// `g(az)` on coefficients.
pub fn dilate_symbol(g: &PowerSeries, a: Complex64) -> Result<PowerSeries> {
    g.dilate(a)
}
