//! Laplace transforms into the upper half-plane, weighted half-plane Bergman
//! norms, and the weighted Hardy inequality for Riemann–Liouville integrals.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bergman::{check_alpha, NormEstimate, NormKind};
use crate::error::{Error, Result};
use crate::quad::{fourier_half_line, gauss_kronrod, half_line, tanh_sinh, tanh_sinh_tol};
use crate::specfun::{gamma, ln_gamma};
use crate::sum::KahanSum;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Density `h̃` on `(0, ∞)` with an exponential decay rate hint.
#[derive(Clone)]
pub struct DensityFn {
    sampler: RealFn,
    pub decay_hint: f64,
}

impl std::fmt::Debug for DensityFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DensityFn").field("decay_hint", &self.decay_hint).finish_non_exhaustive()
    }
}

impl DensityFn {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, decay_hint: f64) -> Self {
        Self { sampler: Arc::new(f), decay_hint }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, 1.0)
    }

    /// `t^s e^{-ct}`.
    pub fn power_exp(s: f64, c: f64) -> Self {
        Self::new(move |t| t.powf(s) * (-c * t).exp(), c)
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.sampler)(t)
    }
}

/// Kernel `t^{r-1}` of the order-`r` Riemann–Liouville integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalKernel {
    pub order: f64,
}

impl FractionalKernel {
    pub fn new(order: f64) -> Result<Self> {
        if !(order.is_finite() && order > 0.0) {
            return Err(Error::domain(format!("fractional order must be positive, got {order}")));
        }
        Ok(Self { order })
    }

    pub fn eval(&self, t: f64) -> f64 {
        t.powf(self.order - 1.0)
    }
}

const LAPLACE_REL_TOL: f64 = 1e-8;

/// `h(w) = ∫_0^∞ h̃(t) e^{iwt} dt` for `Im w > 0`.
///
/// Mild oscillation (`|Re w|` below a few decay rates) goes to adaptive
/// Gauss–Kronrod on `(0, T]`, `T = 40 / (decay + Im w)`; otherwise a
/// double-exponential Fourier rule whose cost is independent of `Re w`.
pub fn laplace_of_density(h_tilde: &DensityFn, w: Complex64) -> Result<Complex64> {
    if !(w.im > 0.0) {
        return Err(Error::domain(format!("Laplace transform needs Im w > 0, got {w}")));
    }
    let rate = h_tilde.decay_hint.max(0.0) + w.im;
    let damped = |t: f64| h_tilde.eval(t) * (-w.im * t).exp();
    let t_max = 40.0 / rate;
    // only a scale for the tolerances below
    let mass = gauss_kronrod(|t| damped(t).abs(), 0.0, t_max, 1e-300, 1e-3, 2000)?.value;
    if mass == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tail = damped(t_max).abs() * t_max;
    if !(tail <= 1e-10 * mass) {
        return Err(Error::numeric("density does not decay fast enough for the Laplace transform", tail / mass));
    }
    let abs_tol = 1e-13 * mass;
    if w.re.abs() <= 4.0 * rate {
        let q = gauss_kronrod(
            |t| Complex64::new(0.0, w.re * t).exp() * damped(t),
            0.0,
            t_max,
            abs_tol,
            LAPLACE_REL_TOL,
            5000,
        )?;
        return Ok(q.value);
    }
    let (c, s) = fourier_half_line(damped, w.re.abs(), abs_tol, LAPLACE_REL_TOL)?;
    Ok(Complex64::new(c, s.copysign(w.re)))
}

/// Stop once two successive steps differ by less than this; the trapezoid
/// error roughly squares when the step halves, so the accepted value is far
/// more accurate than the change suggests.
const HP_CHANGE_TOL: f64 = 1e-4;
const HP_MAX_HALVINGS: usize = 4;
/// Largest share of the total allowed on the outermost grid lines.
const HP_EDGE_TOL: f64 = 1e-11;
const HP_MAX_WIDENINGS: usize = 6;

/// `∬_{ℂ₊} |h(u+iv)|² v^α du dv / π`; see [`halfplane_norm_sq_scaled`].
pub fn halfplane_norm_sq<F: Fn(Complex64) -> Result<Complex64> + Sync>(h: F, alpha: f64) -> Result<NormEstimate> {
    halfplane_norm_sq_scaled(h, alpha, 1.0)
}

/// Same integral with a length scale `s > 0` for `h`.
///
/// Substituting `v = s e^σ` and `u = (s + v) sinh τ` turns both directions into
/// integrals over the whole line whose integrands decay exponentially and stay
/// analytic in a strip, so the plain trapezoidal rule converges geometrically.
/// The windows widen until the outermost grid lines carry a negligible share,
/// then the step halves until two successive values differ by under `1e-4`
/// (at most four halvings). The reported residual is that last change.
pub fn halfplane_norm_sq_scaled<F: Fn(Complex64) -> Result<Complex64> + Sync>(h: F, alpha: f64, scale: f64) -> Result<NormEstimate> {
    check_alpha(alpha)?;
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::invalid(format!("scale must be positive, got {scale}")));
    }
    let mut grid = HalfPlaneGrid { step: 0.4, sigma_half_width: 20.0, tau_half_width: 7.0 };
    let mut pass = halfplane_pass(&h, alpha, scale, &grid)?;
    let mut widenings = 0;
    while pass.sigma_edge > HP_EDGE_TOL || pass.tau_edge > HP_EDGE_TOL {
        widenings += 1;
        if widenings > HP_MAX_WIDENINGS {
            return Err(Error::numeric(
                "half-plane integrand does not decay inside the quadrature window",
                pass.sigma_edge.max(pass.tau_edge),
            ));
        }
        if pass.sigma_edge > HP_EDGE_TOL {
            grid.sigma_half_width += 8.0;
        }
        if pass.tau_edge > HP_EDGE_TOL {
            grid.tau_half_width += 2.0;
        }
        pass = halfplane_pass(&h, alpha, scale, &grid)?;
    }
    let mut prev = pass.value;
    let mut change = f64::INFINITY;
    for _ in 0..HP_MAX_HALVINGS {
        grid.step *= 0.5;
        let next = halfplane_pass(&h, alpha, scale, &grid)?.value;
        change = if next == 0.0 && prev == 0.0 { 0.0 } else { (next - prev).abs() / next.abs() };
        prev = next;
        if change < HP_CHANGE_TOL {
            return Ok(NormEstimate {
                value_sq: next,
                kind: NormKind::Quadrature,
                trunc: grid.points(),
                residual: change,
            });
        }
    }
    Err(Error::numeric(
        format!("half-plane quadrature did not settle after {HP_MAX_HALVINGS} step halvings"),
        change,
    ))
}

struct HalfPlaneGrid {
    step: f64,
    sigma_half_width: f64,
    tau_half_width: f64,
}

impl HalfPlaneGrid {
    fn nodes(&self, half_width: f64) -> Vec<f64> {
        let n = (half_width / self.step).ceil() as i64;
        (-n..=n).map(|k| k as f64 * self.step).collect()
    }

    fn points(&self) -> usize {
        self.nodes(self.sigma_half_width).len() * self.nodes(self.tau_half_width).len()
    }
}

struct Pass {
    value: f64,
    /// Share of the total on the first and last `σ` rows.
    sigma_edge: f64,
    /// Share of the total on the first and last `τ` columns.
    tau_edge: f64,
}

/// One row: (full sum, contribution of the two outermost τ nodes).
fn halfplane_row<F: Fn(Complex64) -> Result<Complex64>>(h: &F, alpha: f64, scale: f64, sigma: f64, taus: &[f64]) -> Result<(f64, f64)> {
    let v = scale * sigma.exp();
    let width = scale + v;
    let mut line = KahanSum::new();
    let mut edge = 0.0;
    for (i, &tau) in taus.iter().enumerate() {
        let term = h(Complex64::new(width * tau.sinh(), v))?.norm_sqr() * tau.cosh();
        if i == 0 || i + 1 == taus.len() {
            edge += term;
        }
        line.add(term);
    }
    // du = (s+v) cosh τ dτ, dv = v dσ
    let jac = width * v.powf(alpha + 1.0);
    Ok((line.value() * jac, edge * jac))
}

fn halfplane_pass<F: Fn(Complex64) -> Result<Complex64> + Sync>(h: &F, alpha: f64, scale: f64, grid: &HalfPlaneGrid) -> Result<Pass> {
    let sigmas = grid.nodes(grid.sigma_half_width);
    let taus = grid.nodes(grid.tau_half_width);
    // rows are farmed out to threads but summed in a fixed order, so the
    // result does not depend on the thread count
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(sigmas.len());
    let chunk = sigmas.len().div_ceil(threads.max(1));
    let rows: Vec<Result<(f64, f64)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sigmas
            .chunks(chunk)
            .map(|part| {
                let taus = &taus;
                scope.spawn(move || part.iter().map(|&sg| halfplane_row(h, alpha, scale, sg, taus)).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|hd| hd.join().expect("quadrature worker panicked")).collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut total = KahanSum::new();
    let mut tau_edge = 0.0;
    for &(row, edge) in &rows {
        total.add(row);
        tau_edge += edge;
    }
    let total = total.value();
    let sigma_edge = rows.first().map_or(0.0, |r| r.0) + rows.last().map_or(0.0, |r| r.0);
    let share = |x: f64| if total > 0.0 { x / total } else { 0.0 };
    Ok(Pass {
        value: total * grid.step * grid.step / PI,
        sigma_edge: share(sigma_edge),
        tau_edge: share(tau_edge),
    })
}

/// `Γ(α+1)/2^α ∫_0^∞ |h̃(t)|² t^{-α-1} dt`.
pub fn density_norm_sq(h_tilde: &DensityFn, alpha: f64) -> Result<NormEstimate> {
    check_alpha(alpha)?;
    let g = |t: f64| h_tilde.eval(t).powi(2) * t.powf(-alpha);
    let (g_small, g_tiny) = (g(1e-8), g(1e-12));
    if g_small > 0.0 && !(g_tiny < 0.5 * g_small) {
        return Err(Error::numeric(
            "density does not vanish fast enough at 0 for this weight",
            g_tiny / g_small,
        ));
    }
    let q = half_line(|t| h_tilde.eval(t).powi(2) * t.powf(-alpha - 1.0), 0.0, 1e-11)?;
    let pre = (ln_gamma(alpha + 1.0)? - alpha * 2f64.ln()).exp();
    Ok(NormEstimate {
        value_sq: pre * q.value,
        kind: NormKind::Quadrature,
        trunc: 0,
        residual: pre * q.error,
    })
}

/// `|‖Lh̃‖²_α − pre·∫|h̃|² t^{-α-1}| / (…)`, with `0/0 = 0`.
pub fn isometry_residual(h_tilde: &DensityFn, alpha: f64) -> Result<f64> {
    let rhs = density_norm_sq(h_tilde, alpha)?.value_sq;
    let scale = if h_tilde.decay_hint > 0.0 { h_tilde.decay_hint } else { 1.0 };
    let lhs = halfplane_norm_sq_scaled(|w| laplace_of_density(h_tilde, w), alpha, scale)?.value_sq;
    if rhs == 0.0 {
        return Ok(if lhs == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok((lhs - rhs).abs() / rhs)
}

/// Function on `(0, ∞)` with known breakpoints; identically zero past the last one.
#[derive(Clone)]
pub struct LineFunction {
    f: RealFn,
    /// Increasing breakpoints in `(0, ∞)`; the last one bounds the support.
    breaks: Vec<f64>,
    /// `Some(values)` when the function is constant between breakpoints.
    steps: Option<Vec<f64>>,
}

impl std::fmt::Debug for LineFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LineFunction")
            .field("breaks", &self.breaks)
            .field("steps", &self.steps)
            .finish_non_exhaustive()
    }
}

impl LineFunction {
    /// Smooth on each `(b_i, b_{i+1})` (with `b_0 = 0`), zero past `b_last`.
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, breaks: Vec<f64>) -> Result<Self> {
        check_breaks(&breaks)?;
        Ok(Self { f: Arc::new(f), breaks, steps: None })
    }

    /// `values[i]` on `[edges[i], edges[i+1])` with `edges[0] = 0`.
    pub fn piecewise_constant(edges: &[f64], values: &[f64]) -> Result<Self> {
        if edges.len() != values.len() + 1 || edges.first() != Some(&0.0) {
            return Err(Error::invalid("piecewise-constant function needs edges 0 = e_0 < ... < e_n and n values"));
        }
        let breaks = edges[1..].to_vec();
        check_breaks(&breaks)?;
        let (e, v) = (edges.to_vec(), values.to_vec());
        let f = move |x: f64| {
            if x < 0.0 {
                return 0.0;
            }
            match e.windows(2).position(|p| x >= p[0] && x < p[1]) {
                Some(i) => v[i],
                None => 0.0,
            }
        };
        Ok(Self { f: Arc::new(f), breaks, steps: Some(values.to_vec()) })
    }

    pub fn zero() -> Self {
        Self { f: Arc::new(|_| 0.0), breaks: vec![1.0], steps: Some(vec![0.0]) }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn support_end(&self) -> f64 {
        *self.breaks.last().expect("at least one breakpoint")
    }

    /// Intervals `(b_i, b_{i+1})` covering the support.
    fn pieces(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        std::iter::once(0.0).chain(self.breaks.iter().copied()).zip(self.breaks.iter().copied())
    }
}

fn check_breaks(breaks: &[f64]) -> Result<()> {
    if breaks.is_empty() || !breaks.iter().all(|b| b.is_finite() && *b > 0.0) || breaks.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::invalid("breakpoints must be positive, finite and increasing"));
    }
    Ok(())
}

const FRAC_TOL: f64 = 1e-12;

/// `f_r(x) / x^r = (1/Γ(r+1)) ∫_0^1 f(x(1 - (1-q)^{1/r})) dq`.
///
/// The substitution removes the kernel singularity; a breakpoint `b < x` of `f`
/// lands at `q = 1 - (1 - b/x)^r`, evaluated with `expm1`/`ln_1p` so that huge
/// `x` keeps full relative accuracy.
fn fractional_mean(f: &LineFunction, order: f64, x: f64) -> Result<f64> {
    let inv = 1.0 / order;
    let mut cuts: Vec<f64> = f
        .breaks
        .iter()
        .filter(|&&b| b < x)
        .map(|&b| -(order * (-b / x).ln_1p()).exp_m1())
        .collect();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let at = |q: f64| f.eval(-x * ((-q).ln_1p() * inv).exp_m1());
    let mut acc = KahanSum::new();
    for p in cuts.windows(2) {
        let (a, b) = (p[0], p[1]);
        let piece = if f.steps.is_some() {
            at(0.5 * (a + b)) * (b - a)
        } else {
            gauss_kronrod(at, a, b, 1e-14, FRAC_TOL, 2000)?.value
        };
        acc.add(piece);
    }
    Ok(acc.value() / gamma(order + 1.0)?.value)
}

/// Riemann–Liouville integral `f_r(x) = (1/Γ(r)) ∫_0^x (x-t)^{r-1} f(t) dt`.
pub fn fractional_integral(f: &LineFunction, order: f64, x: f64) -> Result<f64> {
    FractionalKernel::new(order)?;
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!("evaluation point must be positive, got {x}")));
    }
    Ok(fractional_mean(f, order, x)? * x.powf(order))
}

/// `[Γ(1 - (a+1)/p) / Γ(r + 1 - (a+1)/p)]^p`.
pub fn hardy_constant(p: f64, order: f64, a: f64) -> Result<f64> {
    check_hardy(p, order, a)?;
    let k = 1.0 - (a + 1.0) / p;
    Ok((p * (ln_gamma(k)? - ln_gamma(order + k)?)).exp())
}

fn check_hardy(p: f64, order: f64, a: f64) -> Result<()> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::domain(format!("need p > 1, got {p}")));
    }
    FractionalKernel::new(order)?;
    if !(a.is_finite() && a < p - 1.0) {
        return Err(Error::domain(format!("need a < p - 1, got a = {a}, p = {p}")));
    }
    Ok(())
}

/// Both sides of the weighted Hardy inequality for one function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyCheck {
    /// `∫_0^∞ x^a |f_r(x)/x^r|^p dx`.
    pub lhs: f64,
    /// `constant · ∫_0^∞ x^a |f|^p dx`.
    pub rhs_bound: f64,
    pub constant: f64,
}

const HARDY_TOL: f64 = 1e-10;

/// Evaluate `∫ x^a |f_r/x^r|^p` and its Hardy bound for `f` supported in `(0, b_last]`.
pub fn hardy_check(f: &LineFunction, p: f64, order: f64, a: f64) -> Result<HardyCheck> {
    let constant = hardy_constant(p, order, a)?;
    let mut rhs = KahanSum::new();
    for (lo, hi) in f.pieces() {
        let piece = match &f.steps {
            Some(_) => {
                let v = f.eval(0.5 * (lo + hi)).abs().powf(p);
                if v == 0.0 {
                    0.0
                } else if a <= -1.0 && lo == 0.0 {
                    return Err(Error::numeric("x^a |f|^p is not integrable at 0", f64::INFINITY));
                } else {
                    v * (hi.powf(a + 1.0) - lo.powf(a + 1.0)) / (a + 1.0)
                }
            }
            None => tanh_sinh(|x, _, _| x.powf(a) * f.eval(x).abs().powf(p), lo, hi, HARDY_TOL)?.value,
        };
        rhs.add(piece);
    }
    let rhs_integral = rhs.value();
    // lhs never exceeds the bound, so pieces far below it need no relative accuracy
    let abs_tol = 1e-15 * constant * rhs_integral;

    let mut lhs = KahanSum::new();
    // x^{a/p} first: x^a alone overflows far out in the tail
    let outer = |x: f64| -> Result<f64> { Ok((x.powf(a / p) * fractional_mean(f, order, x)?.abs()).powf(p)) };
    let mut fail: Option<Error> = None;
    let mut guarded = |x: f64| match outer(x) {
        Ok(v) => v,
        Err(e) => {
            fail.get_or_insert(e);
            0.0
        }
    };
    for (lo, hi) in f.pieces() {
        lhs.add(tanh_sinh_tol(|x, _, _| guarded(x), lo, hi, abs_tol, HARDY_TOL)?.value);
    }
    // tail x > X via x = X/u, u ∈ (0, 1]
    let end = f.support_end();
    lhs.add(
        tanh_sinh_tol(
            |u, du, _| {
                if du == 0.0 {
                    return 0.0;
                }
                // dx = X/u² du, ordered so that nothing overflows for tiny u
                let x = end / u;
                guarded(x) * x * (x / end)
            },
            0.0,
            1.0,
            abs_tol,
            HARDY_TOL,
        )?
        .value,
    );
    if let Some(e) = fail {
        return Err(e);
    }
    Ok(HardyCheck { lhs: lhs.value(), rhs_bound: constant * rhs_integral, constant })
}
