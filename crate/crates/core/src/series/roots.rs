//! Durand–Kerner root finding with multiplicity-aware polishing.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::Polynomial;
use crate::error::{Error, Result};

/// Roots closer than this are reported as one root with multiplicity.
pub const CLUSTER_TOL: f64 = 1e-7;

const MAX_SWEEPS: usize = 500;
const RESIDUAL_TOL: f64 = 1e-9;
/// Coarsest radius at which nearby iterates are tested as a multiple root.
const CLUSTER_PROBE: f64 = 1e-2;
/// Normalized residual a polished multiple root must satisfy for every lower derivative.
const MULTIPLE_ROOT_TOL: f64 = 1e-10;

/// All roots of a polynomial, with repeated roots listed once per multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
}

impl RootSet {
    /// Every root, repeated according to multiplicity.
    pub fn all(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Distinct roots with their multiplicities (clustering within [`CLUSTER_TOL`]).
    pub fn distinct(&self) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for &r in &self.roots {
            match out
                .iter_mut()
                .find(|(c, _)| (*c - r).norm() <= CLUSTER_TOL * (1.0 + c.norm()))
            {
                Some(entry) => entry.1 += 1,
                None => out.push((r, 1)),
            }
        }
        out
    }
}

/// Roots of `p` (degree ≥ 1).
///
/// Durand–Kerner (Weierstrass) iteration from `n` points on the circle of
/// radius `1 + max|a_i / a_n|` at angles `2πk/n + 0.4`. Near-coincident
/// iterates are then tested as a multiple root: Newton on `p^{(k-1)}` from the
/// cluster centroid, accepted when every lower derivative vanishes there.
pub fn roots(p: &Polynomial) -> Result<RootSet> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::invalid("root finding needs a polynomial of degree >= 1"));
    }
    let lead = p.leading();
    let monic: Vec<Complex64> = p.coeffs().iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);

    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let eval_monic = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);

    for _sweep in 0..MAX_SWEEPS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let zk = z[k];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    denom *= zk - zj;
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates; nudge apart
                z[k] = zk + Complex64::new(1e-10, 1e-10) * (1.0 + zk.norm());
                max_step = f64::INFINITY;
                continue;
            }
            let step = eval_monic(zk) / denom;
            z[k] = zk - step;
            max_step = max_step.max(step.norm() / (1.0 + zk.norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    polish_clusters(p, &mut z);

    let bound = RESIDUAL_TOL * (1.0 + p.max_abs_coeff());
    let mut worst: f64 = 0.0;
    for &r in &z {
        let scale = r.norm().max(1.0).powi(n as i32);
        let res = p.eval(r).norm() / scale;
        if !res.is_finite() {
            return Err(Error::numeric("root iteration produced a non-finite value", f64::INFINITY));
        }
        worst = worst.max(res);
    }
    if worst > bound {
        return Err(Error::numeric(
            format!("Durand-Kerner did not converge in {MAX_SWEEPS} sweeps"),
            worst,
        ));
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(RootSet { roots: z })
}

fn polish_clusters(p: &Polynomial, z: &mut [Complex64]) {
    let idx: Vec<usize> = (0..z.len()).collect();
    polish_group(p, z, &idx, CLUSTER_PROBE);
}

/// Split `members` into groups at radius `tol`; validate each group of size
/// ≥ 2 as a multiple root, otherwise retry the group at a tenth of the radius.
fn polish_group(p: &Polynomial, z: &mut [Complex64], members: &[usize], tol: f64) {
    for group in single_linkage(z, members, tol) {
        if group.len() < 2 {
            continue;
        }
        let k = group.len();
        let centroid = group.iter().map(|&i| z[i]).sum::<Complex64>() / k as f64;
        if let Some(c) = multiple_root(p, centroid, k) {
            for &i in &group {
                z[i] = c;
            }
        } else if tol > CLUSTER_TOL {
            polish_group(p, z, &group, tol * 0.1);
        }
    }
}

fn single_linkage(z: &[Complex64], members: &[usize], tol: f64) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..members.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for a in 0..members.len() {
        for b in (a + 1)..members.len() {
            let (za, zb) = (z[members[a]], z[members[b]]);
            if (za - zb).norm() <= tol * (1.0 + za.norm().max(zb.norm())) {
                let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                if ra != rb {
                    label[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; members.len()];
    for a in 0..members.len() {
        let r = find(&mut label, a);
        match root_of[r] {
            Some(g) => groups[g].push(members[a]),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![members[a]]);
            }
        }
    }
    groups
}

/// Newton on `p^{(k-1)}` from `start`; returns the point if `p, p', ..., p^{(k-1)}`
/// all vanish there to [`MULTIPLE_ROOT_TOL`] relative to their evaluation scale.
fn multiple_root(p: &Polynomial, start: Complex64, k: usize) -> Option<Complex64> {
    let mut derivs = vec![p.clone()];
    for _ in 1..=k {
        let next = derivs.last().unwrap().derivative();
        derivs.push(next);
    }
    let target = &derivs[k - 1];
    let slope = &derivs[k];
    if slope.is_zero() {
        return None;
    }
    let mut c = start;
    for _ in 0..60 {
        let d = slope.eval(c);
        if d.norm() == 0.0 {
            return None;
        }
        let step = target.eval(c) / d;
        c -= step;
        if step.norm() <= 1e-16 * (1.0 + c.norm()) {
            break;
        }
    }
    if (c - start).norm() > CLUSTER_PROBE * (1.0 + start.norm()) {
        return None;
    }
    for q in &derivs[..k] {
        let scale = q.eval_scale(c);
        if scale > 0.0 && q.eval(c).norm() > MULTIPLE_ROOT_TOL * scale {
            return None;
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_imaginary_pair() {
        let r = roots(&Polynomial::from_real(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r.all()[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r.all()[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn double_root_is_clustered() {
        let r = roots(&Polynomial::from_real(&[1.0, 2.0, 1.0])).unwrap();
        let d = r.distinct();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        assert!((d[0].0 - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sixfold_root_polished() {
        let p = Polynomial::from_roots(c(1.0, 0.0), &[c(1.0, 0.0); 6]);
        let r = roots(&p).unwrap();
        let d = r.distinct();
        assert_eq!(d, vec![(c(1.0, 0.0), 6)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let p = Polynomial::from_roots(
            c(2.0, 1.0),
            &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0)],
        );
        let mut d = roots(&p).unwrap().distinct();
        d.sort_by(|a, b| b.1.cmp(&a.1));
        assert_eq!(d.len(), 3);
        assert_eq!(d[0].1, 3);
        assert!((d[0].0 - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(d[1].1, 2);
        assert!((d[1].0 - c(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn linear_numerator_of_koebe_derivative() {
        let r = roots(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        assert!((r.all()[0] - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn constants_rejected() {
        assert!(roots(&Polynomial::from_real(&[3.0])).is_err());
        assert!(roots(&Polynomial::zero()).is_err());
    }
}
