use num_complex::Complex64;

use super::Symbol;
use crate::bergman::{check_alpha, MonomialWeights, NormEstimate, NormKind};
use crate::error::{Error, Result};

/// `M_g : A²_α → A²_β`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSpec {
    pub alpha: f64,
    pub beta: f64,
    pub symbol: Symbol,
}

impl MultiplierSpec {
    /// Needs `β ≥ α > -1` and a symbol analytic in the disk.
    pub fn new(alpha: f64, beta: f64, symbol: Symbol) -> Result<Self> {
        check_alpha(alpha)?;
        if !(beta.is_finite() && beta >= alpha) {
            return Err(Error::domain(format!("need beta >= alpha, got alpha = {alpha}, beta = {beta}")));
        }
        symbol.check_analytic()?;
        Ok(Self { alpha, beta, symbol })
    }

    /// `(β - α)/2`, the growth exponent matching bounded multipliers.
    pub fn gamma(&self) -> f64 {
        0.5 * (self.beta - self.alpha)
    }

    pub fn with_symbol(&self, symbol: Symbol) -> Result<Self> {
        Self::new(self.alpha, self.beta, symbol)
    }
}

/// Matrix of `M_g` in the orthonormal bases `zⁿ/√w_n(α)` and `z^m/√w_m(β)`,
/// restricted to the first `n_cols` inputs and `n_rows` outputs.
///
/// `A[m][n] = c_{m-n} √(w_m(β)/w_n(α))` for `m ≥ n`, zero above the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    /// Diagonal matrix (test helper and degenerate case).
    pub fn diagonal(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &v) in d.iter().enumerate() {
            entries[i * n + i] = v;
        }
        Self { n_rows: n, n_cols: n, entries }
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[m * self.n_cols + n]
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n_cols);
        self.entries
            .chunks(self.n_cols)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn apply_adjoint(&self, u: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(u.len(), self.n_rows);
        let mut out = vec![Complex64::new(0.0, 0.0); self.n_cols];
        for (row, &x) in self.entries.chunks(self.n_cols).zip(u) {
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * x;
            }
        }
        out
    }
}

/// Assemble the `n_rows × n_cols` section of `M_g`.
pub fn operator_matrix(spec: &MultiplierSpec, n_cols: usize, n_rows: usize) -> Result<OperatorMatrix> {
    if n_cols == 0 || n_rows == 0 {
        return Err(Error::invalid("operator matrix needs at least one row and one column"));
    }
    let c = spec.symbol.expand(n_rows - 1)?;
    let c = c.coeffs();
    let dim = n_rows.max(n_cols);
    let wa = MonomialWeights::new(spec.alpha, dim)?.w;
    let wb = MonomialWeights::new(spec.beta, dim)?.w;
    let mut entries = vec![Complex64::new(0.0, 0.0); n_rows * n_cols];
    for m in 0..n_rows {
        let sb = wb[m].sqrt();
        for n in 0..n_cols.min(m + 1) {
            let v = c[m - n] * (sb / wa[n].sqrt());
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::numeric(format!("non-finite matrix entry at ({m}, {n})"), f64::INFINITY));
            }
            entries[m * n_cols + n] = v;
        }
    }
    Ok(OperatorMatrix { n_rows, n_cols, entries })
}

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 100_000;

/// Largest squared singular value by power iteration on `AᴴA`.
///
/// Starts from the normalized all-ones vector and stops once the Rayleigh
/// quotient changes by less than `1e-12` relative. Every iterate is a
/// Rayleigh quotient, so the value never exceeds the true `‖A‖²`.
pub fn compression_norm_sq(a: &OperatorMatrix) -> Result<NormEstimate> {
    let n = a.n_cols;
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut prev = 0.0;
    let mut change = f64::INFINITY;
    for _ in 0..POWER_MAX_ITER {
        let u = a.apply(&v);
        let rq: f64 = u.iter().map(|x| x.norm_sqr()).sum();
        if rq == 0.0 && prev == 0.0 {
            // Av = 0 for the start vector; restart along the largest column
            let best = (0..n)
                .max_by(|&i, &j| column_norm(a, i).total_cmp(&column_norm(a, j)))
                .expect("at least one column");
            if column_norm(a, best) == 0.0 {
                return Ok(estimate(0.0, n, 0.0));
            }
            v = vec![Complex64::new(0.0, 0.0); n];
            v[best] = Complex64::new(1.0, 0.0);
            prev = f64::MIN_POSITIVE;
            continue;
        }
        change = (rq - prev).abs() / rq;
        if change < POWER_TOL {
            return Ok(estimate(rq.max(prev), n, change));
        }
        prev = rq;
        let w = a.apply_adjoint(&u);
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    Err(Error::numeric(
        format!("power iteration did not settle in {POWER_MAX_ITER} steps (best {prev})"),
        change,
    ))
}

fn column_norm(a: &OperatorMatrix, j: usize) -> f64 {
    (0..a.n_rows).map(|m| a.get(m, j).norm_sqr()).sum()
}

fn estimate(value_sq: f64, trunc: usize, residual: f64) -> NormEstimate {
    NormEstimate { value_sq, kind: NormKind::LowerBound, trunc, residual }
}

/// Default row count for a given number of columns.
pub fn default_rows(n_cols: usize) -> usize {
    4 * n_cols
}

/// `compression_norm_sq(operator_matrix(spec, n, 4n))`.
pub fn compression_estimate(spec: &MultiplierSpec, n_cols: usize) -> Result<NormEstimate> {
    compression_norm_sq(&operator_matrix(spec, n_cols, default_rows(n_cols))?)
}
