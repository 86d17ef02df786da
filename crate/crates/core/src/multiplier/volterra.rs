use super::{closed_form_norm_sq, multiplier_lower_bound, LowerBound, MultiplierSpec, Symbol};
use crate::error::Result;

/// Norm of a Volterra-type operator: closed form where known, plus a numeric lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraNorm {
    pub closed_form: Option<f64>,
    pub lower_bound: LowerBound,
}

/// Probing grid for the numeric lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeGrid {
    pub n_cols: usize,
    pub lambdas: Vec<f64>,
    pub rs: Vec<f64>,
    pub thetas: Vec<f64>,
}

/// `‖g‖²_J` for `J_g φ = ∫_0^z φ'(t) g(t) dt`; since `(J_g φ)' = g φ'`
/// this is the squared multiplier norm of `g`.
pub fn volterra_j_norm_sq(spec: &MultiplierSpec, grid: &ProbeGrid) -> Result<VolterraNorm> {
    Ok(VolterraNorm {
        closed_form: closed_form_norm_sq(spec),
        lower_bound: multiplier_lower_bound(spec, grid.n_cols, &grid.lambdas, &grid.rs, &grid.thetas)?,
    })
}

/// `‖g‖²_I` for `I_g φ = ∫_0^z φ(t) g'(t) dt`; since `(I_g φ)' = g' φ`
/// this is the squared multiplier norm of `g'`.
pub fn volterra_i_norm_sq(g: &Symbol, alpha: f64, beta: f64, grid: &ProbeGrid) -> Result<VolterraNorm> {
    let dg = g.derivative(4 * grid.n_cols)?;
    volterra_j_norm_sq(&MultiplierSpec::new(alpha, beta, dg)?, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Polynomial, RationalMap};
    use num_complex::Complex64;

    fn small_grid() -> ProbeGrid {
        ProbeGrid { n_cols: 32, lambdas: vec![], rs: vec![], thetas: vec![] }
    }

    #[test]
    fn trivial_symbols() {
        let zero = Symbol::constant(Complex64::new(0.0, 0.0));
        let j = volterra_j_norm_sq(&MultiplierSpec::new(0.0, 4.0, zero.clone()).unwrap(), &small_grid()).unwrap();
        assert_eq!(j.closed_form, Some(0.0));
        assert_eq!(j.lower_bound.estimate.value_sq, 0.0);
        let c = Symbol::constant(Complex64::new(3.0, 0.0));
        assert_eq!(volterra_i_norm_sq(&c, 0.0, 4.0, &small_grid()).unwrap().closed_form, Some(0.0));
        let z = Symbol::Rational(RationalMap::from_poly(Polynomial::z()));
        assert_eq!(volterra_i_norm_sq(&z, 0.0, 0.0, &small_grid()).unwrap().closed_form, Some(1.0));
    }

    #[test]
    fn g2_and_g3_closed_forms() {
        let g2 = Symbol::preset("g2", 0.0, 4.0).unwrap();
        let g3 = Symbol::preset("g3", 0.0, 4.0).unwrap();
        let j = volterra_j_norm_sq(&MultiplierSpec::new(0.0, 4.0, g2).unwrap(), &small_grid()).unwrap();
        let i = volterra_i_norm_sq(&g3, 0.0, 4.0, &small_grid()).unwrap();
        for v in [&j, &i] {
            assert!((v.closed_form.unwrap() - 30.0).abs() < 1e-12);
            assert!(v.lower_bound.estimate.value_sq <= 30.0);
        }
        assert!((j.closed_form.unwrap() / 16.0 - 1.875).abs() < 1e-13);
    }
}
