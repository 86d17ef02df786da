use num_complex::Complex64;

use super::{roots, Polynomial, PowerSeries};
use crate::error::{Error, Result};

/// Roots of numerator and denominator closer than `MATCH_TOL · max(1, |z|)` cancel.
pub const MATCH_TOL: f64 = 1e-9;

/// Leading coefficients below this fraction of the largest one are treated as
/// rounding residue of a cancellation.
const LEADING_TRIM: f64 = 1e-14;

/// Quotient `num / den` of two polynomials.
///
/// The denominator is normalized so its lowest-order nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("rational map with zero denominator"));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self { num, den: Polynomial::one() };
        }
        let low = den.coeffs()[den.valuation().expect("nonzero denominator")];
        let s = low.inv();
        Self { num: num.scale(s), den: den.scale(s) }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Reduced derivative.
    pub fn derivative(&self) -> Result<Self> {
        rational_derivative(self)
    }

    /// Zeros of the denominator (empty for a polynomial).
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        if self.den.degree() == 0 {
            return Ok(Vec::new());
        }
        Ok(roots(&self.den)?.all().to_vec())
    }

    /// `(a R + b) / (c R + d)` as a single quotient, unreduced.
    pub fn compose_mobius(&self, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if (a * d - b * c).norm() == 0.0 {
            return Err(Error::invalid("degenerate Mobius map (ad - bc = 0)"));
        }
        let num = &self.num.scale(a) + &self.den.scale(b);
        let den = &self.num.scale(c) + &self.den.scale(d);
        Self::new(num, den)
    }

    /// `R(e^{iθ} z)`.
    pub fn rotate(&self, theta: f64) -> Self {
        let u = Complex64::from_polar(1.0, theta);
        let rot = |p: &Polynomial| {
            let mut upow = Complex64::new(1.0, 0.0);
            Polynomial::new(
                p.coeffs()
                    .iter()
                    .map(|&c| {
                        let v = c * upow;
                        upow *= u;
                        v
                    })
                    .collect(),
            )
        };
        Self::normalized(rot(&self.num), rot(&self.den))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::normalized(self.num.scale(s), self.den.clone())
    }

    /// Taylor coefficients at 0 up to `z^n`, by the long-division recurrence.
    pub fn expand(&self, n: usize) -> Result<PowerSeries> {
        let d = self.den.coeffs();
        let d0 = d[0];
        if d0.norm() == 0.0 {
            return Err(Error::invalid("rational map has a pole at the origin"));
        }
        let p = self.num.coeffs();
        let zero = Complex64::new(0.0, 0.0);
        let mut c = vec![zero; n + 1];
        for k in 0..=n {
            let mut acc = p.get(k).copied().unwrap_or(zero);
            for j in 1..d.len().min(k + 1) {
                acc -= d[j] * c[k - j];
            }
            c[k] = acc / d0;
        }
        Ok(PowerSeries::new(c))
    }
}

/// `gain · Π (z - zeros) / Π (z - poles)`; evaluates accurately next to poles
/// where the expanded form cancels catastrophically.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredRational {
    pub gain: Complex64,
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
}

impl FactoredRational {
    pub fn new(r: &RationalMap) -> Result<Self> {
        let all = |p: &Polynomial| -> Result<Vec<Complex64>> {
            if p.degree() == 0 {
                Ok(Vec::new())
            } else {
                Ok(roots(p)?.all().to_vec())
            }
        };
        if r.num.is_zero() {
            return Ok(Self { gain: Complex64::new(0.0, 0.0), zeros: Vec::new(), poles: Vec::new() });
        }
        Ok(Self {
            gain: r.num.leading() / r.den.leading(),
            zeros: all(&r.num)?,
            poles: all(&r.den)?,
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = self.gain;
        for (k, &a) in self.zeros.iter().enumerate() {
            v *= z - a;
            if let Some(&b) = self.poles.get(k) {
                v /= z - b;
            }
        }
        for &b in self.poles.iter().skip(self.zeros.len()) {
            v /= z - b;
        }
        v
    }
}

impl std::fmt::Display for RationalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

/// Divide `p` by `(z - r)`, discarding the remainder. Runs top-down for
/// `|r| <= 1` and bottom-up otherwise so the recurrence never amplifies.
fn deflate(p: &Polynomial, r: Complex64) -> Polynomial {
    let a = p.coeffs();
    let n = a.len() - 1;
    let mut q = vec![Complex64::new(0.0, 0.0); n];
    if r.norm() <= 1.0 {
        q[n - 1] = a[n];
        for k in (1..n).rev() {
            q[k - 1] = a[k] + r * q[k];
        }
    } else {
        q[0] = -a[0] / r;
        for k in 1..n {
            q[k] = (q[k - 1] - a[k]) / r;
        }
    }
    Polynomial::new(q)
}

/// Cancel common roots of numerator and denominator.
///
/// Roots are matched greedily within [`MATCH_TOL`]; each side is then deflated
/// by its own copy of every matched root. When nothing matches the input
/// polynomials are kept as they are.
pub fn rational_reduce(r: &RationalMap) -> Result<RationalMap> {
    let num = r.num.trimmed(LEADING_TRIM);
    let den = r.den.trimmed(LEADING_TRIM);
    if den.is_zero() {
        return Err(Error::invalid("degenerate rational map: denominator vanishes"));
    }
    if num.is_zero() || num.degree() == 0 || den.degree() == 0 {
        return RationalMap::new(num, den);
    }
    let rn = roots(&num)?;
    let rd = roots(&den)?;
    let mut used = vec![false; rd.len()];
    let mut common_num = Vec::new();
    let mut common_den = Vec::new();
    for &a in rn.all() {
        let tol = MATCH_TOL * a.norm().max(1.0);
        let best = rd
            .all()
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, b)| (j, (a - b).norm()))
            .filter(|(_, d)| *d <= tol)
            .min_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((j, _)) = best {
            used[j] = true;
            common_num.push(a);
            common_den.push(rd.all()[j]);
        }
    }
    let mut num = num;
    let mut den = den;
    for (&a, &b) in common_num.iter().zip(&common_den) {
        num = deflate(&num, a);
        den = deflate(&den, b);
    }
    RationalMap::new(num, den)
}

/// `R' = (P'Q - PQ') / Q²`, reduced.
pub fn rational_derivative(r: &RationalMap) -> Result<RationalMap> {
    let (p, q) = (&r.num, &r.den);
    let w = &(&p.derivative() * q) - &(p * &q.derivative());
    if w.is_zero() {
        return Ok(RationalMap::from_poly(Polynomial::zero()));
    }
    rational_reduce(&RationalMap::new(w, q * q)?)
}
