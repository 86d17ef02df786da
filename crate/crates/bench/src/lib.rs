//! Fixtures shared by the benchmarks.

use bergman_core::multiplier::{MultiplierSpec, Symbol};
use bergman_core::PowerSeries;
use num_complex::Complex64;

/// `(1 - z)^{-λ}` truncated at degree `n`.
pub fn binomial_series(lambda: f64, n: usize) -> PowerSeries {
    PowerSeries::binomial(Complex64::new(1.0, 0.0), 1, lambda, n)
}

/// `g₀ = (1 - z²)^{-2}` acting from `A²_0` to `A²_4`.
pub fn g0_spec() -> MultiplierSpec {
    MultiplierSpec::new(0.0, 4.0, Symbol::preset("g0", 0.0, 4.0).expect("preset exists")).expect("valid weights")
}
