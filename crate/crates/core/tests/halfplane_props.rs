use bergman_core::halfplane::{hardy_check, isometry_residual, DensityFn, LineFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn hardy_inequality_on_200_step_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let ps = [1.5, 2.0, 3.0];
    let rs = [0.5, 1.0, 2.0];
    for case in 0..200 {
        let p = ps[case % 3];
        let r = rs[(case / 3) % 3];
        let a = [-0.5, 0.0, p - 1.5][(case / 9) % 3];
        let pieces = rng.gen_range(1..=8);
        let mut edges: Vec<f64> = (1..pieces).map(|_| rng.gen_range(0.0..4.0)).collect();
        edges.extend([0.0, 4.0]);
        edges.sort_by(f64::total_cmp);
        edges.dedup();
        let values: Vec<f64> = (1..edges.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let f = LineFunction::piecewise_constant(&edges, &values).unwrap();
        let h = hardy_check(&f, p, r, a).unwrap();
        assert!(h.lhs <= h.rhs_bound * (1.0 + 1e-6), "case {case} (p={p}, r={r}, a={a}): {h:?}");
    }
}

#[test]
fn laplace_isometry_on_power_exponential_family() {
    for s in [1.0, 2.0, 3.5] {
        for c in [0.5, 1.0, 2.0] {
            for alpha in [0.0, 1.0, 2.5] {
                if 2.0 * s <= alpha {
                    continue;
                }
                let res = isometry_residual(&DensityFn::power_exp(s, c), alpha).unwrap();
                assert!(res <= 1e-4, "s={s} c={c} alpha={alpha}: {res}");
            }
        }
    }
}
