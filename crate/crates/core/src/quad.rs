//! One-dimensional quadrature rules: Gauss–Legendre nodes, adaptive
//! Gauss–Kronrod (7/15) for smooth or oscillatory integrands, and tanh–sinh
//! for integrands with algebraic endpoint singularities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values a quadrature rule can accumulate.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss–Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A Gauss–Legendre rule mapped onto a list of panels.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl PanelRule {
    /// `per_panel` Gauss points on each consecutive interval of `breaks`.
    pub fn new(breaks: &[f64], per_panel: usize) -> Self {
        let (x, w) = gauss_legendre(per_panel);
        let mut nodes = Vec::with_capacity(per_panel * breaks.len().saturating_sub(1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + half * xi);
                weights.push(half * wi);
            }
        }
        Self { nodes, weights }
    }

    pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(&self, mut f: F) -> T {
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(*x) * *w;
        }
        acc
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod = kronrod + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let k = kronrod * h;
    let err = (k - gauss * h).magnitude();
    (k, err)
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Result of an adaptive quadrature: value and estimated absolute error.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
}

/// Globally adaptive Gauss–Kronrod 7/15 on `[a, b]`.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn gauss_kronrod<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<Quadrature<T>> {
    if a == b {
        return Ok(Quadrature {
            value: T::default(),
            error: 0.0,
        });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, err: e });
    let mut total = v;
    let mut total_err = e;
    loop {
        if !total.is_finite_value() {
            return Err(Error::numeric("non-finite integrand sample", f64::INFINITY));
        }
        if total_err <= abs_tol.max(rel_tol * total.magnitude()) {
            break;
        }
        if heap.len() >= max_segments {
            return Err(Error::numeric(
                format!("adaptive quadrature exhausted {max_segments} segments"),
                total_err,
            ));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::numeric("interval collapsed below machine precision", total_err));
        }
        let (lv, le) = gk15(&mut f, worst.a, mid);
        let (rv, re) = gk15(&mut f, mid, worst.b);
        total = total - worst.value + lv + rv;
        total_err = total_err - worst.err + le + re;
        heap.push(Segment { a: worst.a, b: mid, value: lv, err: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, err: re });
    }
    // re-add in a fixed order so the result does not depend on heap history
    let mut segs: Vec<Segment<T>> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = T::default();
    let mut error = 0.0;
    for s in &segs {
        value = value + s.value;
        error += s.err;
    }
    Ok(Quadrature { value, error })
}

/// Share of `∫|f|` below which a tanh-sinh result counts as cancelled to zero.
const EPS_CANCEL: f64 = 1e-12;

/// Tanh–sinh quadrature on `[a, b]`; the integrand is never sampled at the
/// endpoints, so integrable algebraic singularities there are fine.
///
/// `f` receives `(x, distance to a, distance to b)` so callers can evaluate
/// singular factors without cancellation.
pub fn tanh_sinh<F: FnMut(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature<f64>> {
    tanh_sinh_tol(f, a, b, 0.0, rel_tol)
}

/// [`tanh_sinh`] that also stops once the level-to-level change is below `abs_tol`.
pub fn tanh_sinh_tol<F: FnMut(f64, f64, f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature<f64>> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0 });
    }
    let half = 0.5 * (b - a);
    // at t = 6 the nodes sit within 1e-270 of the endpoints
    let t_max = 6.0;
    let mut h = 0.5;
    // level 0: t = k h for all integers k
    let (mut sum, mut mass) = node_pair(&mut f, a, b, half, 0.0, true);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > t_max {
            break;
        }
        let (v, m) = node_pair(&mut f, a, b, half, t, false);
        sum += v;
        mass += m;
        k += 1;
    }
    let mut estimate = sum * h * half;
    let mut last_err = f64::INFINITY;
    for _level in 0..10 {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > t_max {
                break;
            }
            let (v, m) = node_pair(&mut f, a, b, half, t, false);
            sum += v;
            mass += m;
            k += 2;
        }
        let next = sum * h * half;
        if !next.is_finite() {
            return Err(Error::numeric("non-finite integrand sample", f64::INFINITY));
        }
        let err = (next - estimate).abs();
        estimate = next;
        // measure against ∫|f| too, so integrals that cancel to ~0 still terminate
        let scale = estimate.abs().max(EPS_CANCEL * mass * h * half);
        if err <= rel_tol * scale || err <= abs_tol.max(1e-300) {
            // the error of tanh-sinh roughly squares each level
            return Ok(Quadrature { value: estimate, error: err * err.min(1.0) });
        }
        last_err = err;
    }
    if last_err <= abs_tol || last_err <= 1e3 * rel_tol * estimate.abs().max(EPS_CANCEL * mass * h * half) {
        // slow but acceptable (e.g. non-smooth interior); report honestly
        return Ok(Quadrature { value: estimate, error: last_err });
    }
    Err(Error::numeric("tanh-sinh did not converge", last_err))
}

fn node_pair<F: FnMut(f64, f64, f64) -> f64>(f: &mut F, a: f64, b: f64, half: f64, t: f64, centre: bool) -> (f64, f64) {
    let u = 0.5 * PI * t.sinh();
    let cu = u.cosh();
    let w = 0.5 * PI * t.cosh() / (cu * cu);
    // distance from the nearer endpoint, in units of the half width: 1 - tanh(u)
    let delta = 2.0 / (1.0 + (2.0 * u).exp());
    let d = (half * delta).max(0.0);
    if centre {
        let m = a + half;
        let v = w * f(m, half, half);
        return (v, v.abs());
    }
    let full = b - a;
    if d > 0.0 {
        let fl = f(a + d, d, full - d);
        let fr = f(b - d, full - d, d);
        return (w * (fl + fr), w * (fl.abs() + fr.abs()));
    }
    (0.0, 0.0)
}

/// `∫_a^∞ f(t) dt` by mapping `t = a + x/(1-x)` onto `[0, 1)` and applying tanh–sinh.
pub fn half_line<F: FnMut(f64) -> f64>(mut f: F, a: f64, rel_tol: f64) -> Result<Quadrature<f64>> {
    tanh_sinh(
        |x, _da, db| {
            let t = a + x / db;
            let jac = 1.0 / (db * db);
            let v = f(t) * jac;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        rel_tol,
    )
}

/// `∫_0^∞ f(t) e^{iωt} dt` for real `f` and `ω > 0`, returned as
/// `(∫ f cos ωt, ∫ f sin ωt)`.
///
/// Double-exponential rule for Fourier-type integrals (Ooura–Mori): the nodes
/// `t = M φ(kh) / ω`, `Mh = π`, approach the zeros of the oscillating factor
/// double-exponentially, so the cost does not grow with `ω`. The step is halved
/// until two successive estimates agree.
pub fn fourier_half_line<F: FnMut(f64) -> f64>(mut f: F, omega: f64, abs_tol: f64, rel_tol: f64) -> Result<(f64, f64)> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain(format!("frequency must be positive, got {omega}")));
    }
    let mut h = 0.125;
    let mut prev = ooura_pass(&mut f, omega, h);
    let mut change = f64::INFINITY;
    for _ in 0..9 {
        h *= 0.5;
        let next = ooura_pass(&mut f, omega, h);
        if !(next.0.is_finite() && next.1.is_finite()) {
            return Err(Error::numeric("non-finite integrand sample", f64::INFINITY));
        }
        change = (next.0 - prev.0).hypot(next.1 - prev.1);
        prev = next;
        if change <= abs_tol.max(rel_tol * next.0.hypot(next.1)) {
            return Ok(next);
        }
    }
    Err(Error::numeric("Fourier-type quadrature did not converge", change))
}

fn ooura_pass<F: FnMut(f64) -> f64>(f: &mut F, omega: f64, h: f64) -> (f64, f64) {
    let m = PI / h;
    let beta = 0.25;
    let alpha = beta / (1.0 + m * (1.0 + m).ln() / (4.0 * PI)).sqrt();
    // φ(t) = t / (1 - e^{-D}), D = 2t + α(1 - e^{-t}) + β(e^t - 1); returns
    // (φ, φ', φ - t), the last one computed without cancellation
    let map = |t: f64| -> Option<(f64, f64, f64)> {
        if t == 0.0 {
            let d1 = 2.0 + alpha + beta;
            let d2 = beta - alpha;
            return Some((1.0 / d1, (d1 * d1 - d2) / (2.0 * d1 * d1), 1.0 / d1));
        }
        let d = 2.0 * t + alpha * -(-t).exp_m1() + beta * t.exp_m1();
        let dp = 2.0 + alpha * (-t).exp() + beta * t.exp();
        let e = (-d).exp();
        let one_minus_e = -(-d).exp_m1();
        let phi = t / one_minus_e;
        let dphi = (one_minus_e - t * e * dp) / (one_minus_e * one_minus_e);
        let excess = t * e / one_minus_e;
        (phi.is_finite() && dphi.is_finite() && phi > 0.0).then_some((phi, dphi, excess))
    };
    let scale = m / omega;
    let (mut cos_sum, mut sin_sum) = (0.0, 0.0);
    let n_lo = (-10.0 / h).floor() as i64;
    let n_hi = (7.0 / h).ceil() as i64;
    for n in n_lo..=n_hi {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        // sine nodes sit at t = nh, cosine nodes at t = (n - 1/2)h; in both cases
        // the oscillating factor equals (-1)^n sin(M(φ - t))
        if let Some((phi, dphi, excess)) = map(n as f64 * h) {
            let osc = if n == 0 { (m * phi).sin() } else { sign * (m * excess).sin() };
            if osc != 0.0 {
                sin_sum += f(scale * phi) * osc * dphi;
            }
        }
        if let Some((phi, dphi, excess)) = map((n as f64 - 0.5) * h) {
            let osc = sign * (m * excess).sin();
            if osc != 0.0 {
                cos_sum += f(scale * phi) * osc * dphi;
            }
        }
    }
    (cos_sum * scale * h, sin_sum * scale * h)
}
