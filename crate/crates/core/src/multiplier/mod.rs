//! Multiplication operators `M_g : A²_α → A²_β`: coefficient-space matrices,
//! compression and test-function lower bounds, closed-form norms, and the
//! Volterra-type operators that reduce to them.

mod closed;
mod matrix;
mod probe;
mod symbol;
mod volterra;

pub use closed::{closed_form_norm_sq, g0_norm_sq, g2_norm_sq, koebe_norm_sq};
pub use matrix::{compression_estimate, compression_norm_sq, default_rows, operator_matrix, MultiplierSpec, OperatorMatrix};
pub use probe::{
    claim_boundedness_probe, default_lambda_grid, multiplier_lower_bound, test_family_rayleigh, ClaimKind, LowerBound,
    RadialProbe, TestFamily, DEFAULT_R_GRID,
};
pub use symbol::{dilate_symbol, Symbol};
pub use volterra::{volterra_i_norm_sq, volterra_j_norm_sq, ProbeGrid, VolterraNorm};
