//! Numerics for multiplication operators between weighted Bergman spaces on
//! the unit disk: Bergman and growth norms, multiplier norm estimates and
//! closed forms, Schwarzian derivatives of rational maps, half-plane
//! transforms, Hardy-type inequalities and integral means spectra.

pub mod bergman;
pub mod error;
pub mod halfplane;
pub mod multiplier;
pub mod quad;
pub mod schwarzian;
pub mod series;
pub mod specfun;
pub mod spectrum;
pub mod sum;

pub use error::{Error, Result};
pub use series::{Polynomial, PowerSeries, RationalMap};
pub use specfun::{binomial_coeffs, gamma, GammaValue};
