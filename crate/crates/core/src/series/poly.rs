use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Polynomial with complex coefficients, lowest degree first.
///
/// The leading coefficient is always nonzero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    /// `lead · Π (z - r)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ |c_i| |z|^i`, the natural scale of rounding errors in [`Self::eval`].
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Drop leading coefficients below `rel_tol · max|c|`.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.max_abs_coeff();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.norm() <= cut) {
            c.pop();
        }
        Self::new(c)
    }

    /// Zero out every coefficient with `|c| <= abs_tol`.
    pub fn chopped(&self, abs_tol: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.norm() <= abs_tol { Complex64::new(0.0, 0.0) } else { c })
                .collect(),
        )
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() != 0.0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.im == 0.0 {
                    format!("{}", c.re)
                } else {
                    format!("{}{:+}i", c.re, c.im)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|i| *self.coeffs.get(i).unwrap_or(&zero) + *rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }
}
