use bergman_core::series::{rational_reduce, roots};
use bergman_core::{Polynomial, RationalMap};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..=max_deg + 1)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
        .prop_filter("leading coefficient away from zero", |c: &Vec<Complex64>| c.last().unwrap().norm() > 0.1)
}

/// Pair up two root lists by repeatedly taking the closest remaining pair;
/// returns the largest distance used.
fn match_distance(mut a: Vec<Complex64>, mut b: Vec<Complex64>) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut worst = 0.0f64;
    while !a.is_empty() {
        let (mut bi, mut bj, mut bd) = (0, 0, f64::INFINITY);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let d = (x - y).norm();
                if d < bd {
                    (bi, bj, bd) = (i, j, d);
                }
            }
        }
        worst = worst.max(bd);
        a.swap_remove(bi);
        b.swap_remove(bj);
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn roots_of_product_are_union(p in coeffs(8), q in coeffs(8)) {
        let (p, q) = (Polynomial::new(p), Polynomial::new(q));
        let mut expected = roots(&p).unwrap().all().to_vec();
        expected.extend_from_slice(roots(&q).unwrap().all());
        let got = roots(&(&p * &q)).unwrap().all().to_vec();
        // nearly coincident roots are ill-conditioned; only well-separated cases are meaningful at 1e-6
        let sep = expected.iter().enumerate()
            .flat_map(|(i, x)| expected[i + 1..].iter().map(move |y| (x - y).norm()))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(sep > 1e-3);
        prop_assert!(match_distance(expected, got) < 1e-6);
    }

    #[test]
    fn reduce_preserves_values(num in coeffs(5), den in coeffs(5), shared in coeffs(3), zs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 20)) {
        let common = Polynomial::new(shared);
        let r = RationalMap::new(&Polynomial::new(num) * &common, &Polynomial::new(den) * &common).unwrap();
        let reduced = rational_reduce(&r).unwrap();
        let poles = roots(r.den()).unwrap().all().to_vec();
        let zeros = roots(&common).unwrap().all().to_vec();
        for (re, im) in zs {
            let z = Complex64::new(re, im);
            if poles.iter().chain(&zeros).any(|p| (z - p).norm() < 0.05) {
                continue;
            }
            let (a, b) = (r.eval(z), reduced.eval(z));
            prop_assert!((a - b).norm() <= 1e-8 * a.norm().max(1e-300), "{} vs {} at {}", a, b, z);
        }
    }
}
