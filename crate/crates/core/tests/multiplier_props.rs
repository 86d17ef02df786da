use std::f64::consts::PI;

use bergman_core::multiplier::{
    compression_estimate, g0_norm_sq, koebe_norm_sq, test_family_rayleigh, MultiplierSpec, Symbol, TestFamily,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn g0_spec() -> MultiplierSpec {
    MultiplierSpec::new(0.0, 4.0, Symbol::preset("g0", 0.0, 4.0).unwrap()).unwrap()
}

#[test]
fn compression_is_sound_and_monotone() {
    let bound = g0_norm_sq(0.0, 4.0).unwrap();
    let spec = g0_spec();
    let mut prev = 0.0;
    for n in [32, 64, 128, 256, 512, 1024] {
        let v = compression_estimate(&spec, n).unwrap().value_sq;
        assert!(v <= bound * (1.0 + 1e-9), "N = {n}: {v}");
        assert!(v >= prev, "N = {n}: {v} < {prev}");
        prev = v;
    }
}

#[test]
fn rayleigh_quotients_stay_below_closed_forms() {
    let g0 = g0_spec();
    let koebe = g0.with_symbol(Symbol::preset("koebe-schwarzian", 0.0, 4.0).unwrap()).unwrap();
    let (g0_bound, koebe_bound) = (g0_norm_sq(0.0, 4.0).unwrap(), koebe_norm_sq(0.0).unwrap());
    for lambda in [1.0001, 1.01, 1.1, 1.5] {
        for r in [0.5, 0.9, 0.99, 0.999] {
            for theta in [0.0, 1.0, PI] {
                for family in [TestFamily::OneMinusRz, TestFamily::OneMinusRzSq] {
                    let p = test_family_rayleigh(&g0, lambda, r, family, theta).unwrap();
                    assert!(p.rayleigh_sq <= g0_bound * (1.0 + 1e-9), "{p:?}");
                    let p = test_family_rayleigh(&koebe, lambda, r, family, theta).unwrap();
                    assert!(p.rayleigh_sq <= koebe_bound * (1.0 + 1e-9), "{p:?}");
                }
            }
        }
    }
}

#[test]
fn dilation_never_increases_the_norm() {
    let bound = g0_norm_sq(0.0, 4.0).unwrap();
    let spec = g0_spec();
    let base = Symbol::preset("g0", 0.0, 4.0).unwrap();
    for a in [Complex64::new(0.5, 0.0), Complex64::new(0.9, 0.0), Complex64::new(0.99, 0.0), Complex64::new(0.0, 0.7)] {
        let dilated = spec.with_symbol(base.dilate(a).unwrap()).unwrap();
        for n in [64, 256] {
            let v = compression_estimate(&dilated, n).unwrap().value_sq;
            assert!(v <= bound * (1.0 + 1e-9), "a = {a}, N = {n}: {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rotation_leaves_compression_unchanged(theta in 0.0f64..(2.0 * PI), name in prop::sample::select(vec!["g0", "g1", "g2", "koebe-schwarzian"])) {
        let spec = g0_spec().with_symbol(Symbol::preset(name, 0.0, 4.0).unwrap()).unwrap();
        let rotated = spec.with_symbol(spec.symbol.rotate(theta)).unwrap();
        let a = compression_estimate(&spec, 64).unwrap().value_sq;
        let b = compression_estimate(&rotated, 64).unwrap().value_sq;
        prop_assert!((a - b).abs() <= 1e-12 * a, "{} vs {}", a, b);
    }

    #[test]
    fn scaling_is_quadratic(re in -3.0f64..3.0, im in -3.0f64..3.0, name in prop::sample::select(vec!["g0", "g2", "koebe-schwarzian"])) {
        let c = Complex64::new(re, im);
        prop_assume!(c.norm() > 1e-3);
        let spec = g0_spec().with_symbol(Symbol::preset(name, 0.0, 4.0).unwrap()).unwrap();
        let scaled = spec.with_symbol(spec.symbol.scale(c)).unwrap();
        let a = compression_estimate(&spec, 64).unwrap().value_sq;
        let b = compression_estimate(&scaled, 64).unwrap().value_sq;
        prop_assert!((b - c.norm_sqr() * a).abs() <= 1e-12 * b, "{} vs {}", b, c.norm_sqr() * a);
    }
}
