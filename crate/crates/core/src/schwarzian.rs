//! Pre-Schwarzian and Schwarzian derivatives, boundary critical points and
//! the leading Laurent coefficient of `S(R)` at a double pole.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{rational_derivative, rational_reduce, roots, series_multiply, FactoredRational, Polynomial, PowerSeries, RationalMap};

/// Coefficients below this fraction of the contributing products are cancellation noise.
const CANCEL_TOL: f64 = 1e-13;

/// `W = P'Q - PQ'`, the numerator of `R'`.
fn wronskian(r: &RationalMap) -> Polynomial {
    let (p, q) = (r.num(), r.den());
    let a = &p.derivative() * q;
    let b = p * &q.derivative();
    let scale = a.max_abs_coeff().max(b.max_abs_coeff());
    (&a - &b).chopped(CANCEL_TOL * scale)
}

fn nonconstant(r: &RationalMap) -> Result<Polynomial> {
    let w = wronskian(r);
    if w.is_zero() {
        return Err(Error::invalid("map is constant; its derivative vanishes identically"));
    }
    Ok(w)
}

/// `N(R) = R''/R' = (W'Q - 2WQ') / (WQ)`, reduced.
pub fn pre_schwarzian(r: &RationalMap) -> Result<RationalMap> {
    let w = nonconstant(r)?;
    let q = r.den();
    let a = &w.derivative() * q;
    let b = (&w * &q.derivative()).scale(Complex64::new(2.0, 0.0));
    let scale = a.max_abs_coeff().max(b.max_abs_coeff());
    let num = (&a - &b).chopped(CANCEL_TOL * scale);
    rational_reduce(&RationalMap::new(num, &w * q)?)
}

/// `S(R) = N' - N²/2`, reduced.
///
/// With `W = P'Q - PQ'` and `V = P''Q' - P'Q''` this equals
/// `(W W'' - 3/2 W'² + 2 W V) / W²`: poles of `R` drop out before any
/// cancellation is needed.
pub fn schwarzian_rational(r: &RationalMap) -> Result<RationalMap> {
    let w = nonconstant(r)?;
    let (p, q) = (r.num(), r.den());
    let (p1, q1) = (p.derivative(), q.derivative());
    let v = &(&p1.derivative() * &q1) - &(&p1 * &q1.derivative());
    let w1 = w.derivative();
    let t1 = &w * &w1.derivative();
    let t2 = (&w1 * &w1).scale(Complex64::new(1.5, 0.0));
    let t3 = (&w * &v).scale(Complex64::new(2.0, 0.0));
    let scale = t1.max_abs_coeff().max(t2.max_abs_coeff()).max(t3.max_abs_coeff());
    let num = (&(&t1 - &t2) + &t3).chopped(CANCEL_TOL * scale);
    if num.is_zero() {
        return Ok(RationalMap::from_poly(Polynomial::zero()));
    }
    rational_reduce(&RationalMap::new(num, &w * &w)?)
}

/// Schwarzian of `f` from the series of `f'`; the result is truncated two
/// orders below the input.
pub fn schwarzian_series(f_prime: &PowerSeries) -> Result<PowerSeries> {
    if f_prime.coeffs()[0].norm() == 0.0 {
        return Err(Error::invalid("f'(0) = 0: the pre-Schwarzian has a pole at the origin"));
    }
    if f_prime.trunc() < 2 {
        return Err(Error::invalid("need f' to at least order 2"));
    }
    let n = f_prime.derivative().divide(f_prime)?;
    let dn = n.derivative();
    let n2 = series_multiply(&n, &n).truncated(dn.trunc());
    Ok(dn.sub(&n2.scale(Complex64::new(0.5, 0.0))))
}

/// Critical points of `R` on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSet {
    pub points: Vec<Complex64>,
    pub tolerance: f64,
}

pub const CIRCLE_TOL: f64 = 1e-8;

/// Distinct zeros of the reduced numerator of `R'` with `||z| - 1| ≤ tol`.
pub fn critical_points_on_circle(r: &RationalMap, tol: f64) -> Result<CriticalSet> {
    nonconstant(r)?;
    let d = rational_derivative(r)?;
    let mut points = Vec::new();
    if d.num().degree() >= 1 {
        for (z, _) in roots(d.num())?.distinct() {
            if (z.norm() - 1.0).abs() <= tol {
                points.push(z);
            }
        }
    }
    Ok(CriticalSet { points, tolerance: tol })
}

const LAURENT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// A denominator root within this distance of `z0` marks `z0` as a pole.
const POLE_MATCH: f64 = 1e-6;

/// `lim_{z→z0} (z - z0)² S(z)` by Richardson extrapolation of samples at
/// `z = z0 (1 + h)`, `h ∈ {1e-2, 1e-3, 1e-4}` (`z0 + h` when `z0 = 0`).
pub fn laurent_leading(s: &RationalMap, z0: Complex64) -> Result<Complex64> {
    if s.is_zero() {
        return Err(Error::invalid("function vanishes identically and has no poles"));
    }
    let f = FactoredRational::new(s)?;
    if !f.poles.iter().any(|b| (b - z0).norm() <= POLE_MATCH * z0.norm().max(1.0)) {
        return Err(Error::invalid(format!("{z0} is not a pole")));
    }
    let dir = if z0.norm() > 0.0 { z0 } else { Complex64::new(1.0, 0.0) };
    let samples: Vec<Complex64> = LAURENT_STEPS
        .iter()
        .map(|&h| {
            let dz = dir * h;
            dz * dz * f.eval(z0 + dz)
        })
        .collect();
    // an order-3 pole makes (z - z0)² S grow like 1/h
    if samples[2].norm() > 5.0 * samples[1].norm() && samples[1].norm() > 5.0 * samples[0].norm() {
        return Err(Error::invalid(format!("pole at {z0} has order greater than 2")));
    }
    // linear then quadratic error terms; step ratio 10
    let r1: Vec<Complex64> = samples.windows(2).map(|p| (p[1] * 10.0 - p[0]) / 9.0).collect();
    Ok((r1[1] * 100.0 - r1[0]) / 99.0)
}
