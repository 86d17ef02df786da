//! Exact-degree polynomials, rational maps and truncated power series over
//! complex coefficients.

mod parse;
mod poly;
mod power;
mod rational;
mod roots;

pub use parse::{parse_complex, parse_function, parse_poly, parse_rational, parse_series, ParsedFunction};
pub use poly::Polynomial;
pub use power::{series_multiply, PowerSeries};
pub use rational::{rational_derivative, FactoredRational, rational_reduce, RationalMap, MATCH_TOL};
pub use roots::{roots, RootSet, CLUSTER_TOL};
