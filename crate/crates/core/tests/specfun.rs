#![allow(clippy::excessive_precision)]

use bouncer::specfun::{
    airy, airy_ai, airy_ai_prime, airy_zero, airy_zero_asymptotic, airy_zeros, integrate_1d, integrate_to_infinity,
    integrate_with_error, QuadratureSpec,
};
use proptest::prelude::*;

/// (x, Ai(x), Ai'(x)) from 40-digit mpmath.
const AIRY_TABLE: &[(f64, f64, f64)] = &[
    (-20.0, -1.7640612707798469e-1, 8.9286285673647124e-1),
    (-15.0, 2.7821749087082893e-1, 2.7237420430864202e-1),
    (-10.5, -3.119260350510506e-1, 9.0957487390681673e-2),
    (-8.5, -3.3029023763020888e-1, -3.2313348284639136e-2),
    (-7.0, 1.8428083525050564e-1, -7.7100816841012655e-1),
    (-4.0, -7.0265532949289515e-2, -7.9062857536858138e-1),
    (-2.5, -1.1232506769296609e-1, 6.7885273426479436e-1),
    (-1.0, 5.3556088329235212e-1, -1.0160567116645209e-2),
    (-0.3, 4.3090309528558086e-1, -2.4054512725815461e-1),
    (0.0, 3.5502805388781724e-1, -2.588194037928068e-1),
    (0.4, 2.5474235429567634e-1, -2.3583203441920822e-1),
    (1.0, 1.3529241631288142e-1, -1.5914744129679321e-1),
    (2.2, 2.5610404421773212e-2, -4.0497263244453125e-2),
    (3.5, 2.584098786989635e-3, -5.0044139679525828e-3),
    (5.0, 1.0834442813607442e-4, -2.4741389086846248e-4),
    (6.0, 9.9476943602528896e-6, -2.4765200397034955e-5),
    (7.5, 1.9172560675134308e-7, -5.3127139597205447e-7),
    (10.0, 1.1047532552898686e-10, -3.5206336767389236e-10),
    (15.0, 2.1649625207379923e-18, -8.4205679540177728e-18),
];

/// (n, x_n) with Ai(-x_n) = 0, from mpmath.
const ZERO_TABLE: &[(usize, f64)] = &[
    (1, 2.338107410459767),
    (2, 4.0879494441309706),
    (3, 5.5205598280955511),
    (5, 7.9441335871208531),
    (10, 12.828776752865757),
    (20, 20.537332907677566),
    (50, 38.021008677255254),
    (100, 60.455557274116699),
];

fn close(got: f64, want: f64) -> bool {
    let err = (got - want).abs();
    err <= 5e-14 || err <= 1e-12 * want.abs()
}

#[test]
fn airy_matches_reference_table() {
    for &(x, ai, aip) in AIRY_TABLE {
        let v = airy(x).unwrap();
        assert!(close(v.ai, ai), "Ai({x}) = {} vs {ai}", v.ai);
        assert!(close(v.ai_prime, aip), "Ai'({x}) = {} vs {aip}", v.ai_prime);
    }
}

#[test]
fn derivative_of_derivative_is_x_ai() {
    // Ai'' = x Ai, checked by a central difference of Ai'
    for x in [-6.0, -2.0, 0.5, 3.0] {
        let h = 1e-4;
        let second = (airy_ai_prime(x + h).unwrap() - airy_ai_prime(x - h).unwrap()) / (2.0 * h);
        assert!((second - x * airy_ai(x).unwrap()).abs() < 1e-7);
    }
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-5;
    let mut x = -10.0;
    while x <= 5.0 {
        let fd = (airy_ai(x + h).unwrap() - airy_ai(x - h).unwrap()) / (2.0 * h);
        assert!((fd - airy_ai_prime(x).unwrap()).abs() < 1e-6, "x = {x}");
        x += 0.137;
    }
}

#[test]
fn non_finite_arguments_rejected() {
    assert!(airy(f64::NAN).is_err());
    assert!(airy(f64::INFINITY).is_err());
    assert!(airy(f64::NEG_INFINITY).is_err());
}

#[test]
fn zeros_match_reference_table() {
    for &(n, x) in ZERO_TABLE {
        let z = airy_zero(n).unwrap();
        assert!((z - x).abs() <= 1e-12 * x, "x_{n} = {z} vs {x}");
    }
}

#[test]
fn zeros_are_roots() {
    let zeros = airy_zeros(100).unwrap();
    for (k, &x) in zeros.iter().enumerate() {
        // |Ai(-x_n + δ)| ≈ |Ai'(-x_n)| δ; allow a few ulps of x_n
        let slope = airy_ai_prime(-x).unwrap().abs();
        let residual = airy_ai(-x).unwrap().abs();
        assert!(residual <= slope * 8.0 * f64::EPSILON * x + 1e-15, "n = {}", k + 1);
    }
    assert!(zeros.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn first_zero_and_its_asymptotic_estimate() {
    let x1 = airy_zero(1).unwrap();
    let seed = airy_zero_asymptotic(1).unwrap();
    assert!((x1 - 2.33811).abs() <= 1e-5);
    assert!((seed - 2.32025).abs() <= 1e-5);
    let gap_percent = 100.0 * (x1 - seed) / x1;
    assert!((gap_percent - 0.76372).abs() <= 1e-3);
}

#[test]
fn asymptotic_seeds_increase_and_undershoot() {
    let mut prev = 0.0;
    for n in 1..=20 {
        let seed = airy_zero_asymptotic(n).unwrap();
        assert!(seed > prev);
        assert!(seed < airy_zero(n).unwrap());
        prev = seed;
    }
    assert!(airy_zero_asymptotic(0).is_err());
    assert!(airy_zero(0).is_err());
}

#[test]
fn gaussian_integral() {
    let spec = QuadratureSpec::default();
    let v = integrate_1d(|x: f64| (-x * x).exp(), -10.0, 10.0, &spec).unwrap();
    assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
}

#[test]
fn squared_eigenfunction_integral() {
    // ∫_0^∞ Ai(x - x1)² dx = Ai'(-x1)²
    let x1 = airy_zero(1).unwrap();
    let want = 0.49169661790062885;
    let spec = QuadratureSpec::default();
    let f = |x: f64| airy_ai(x - x1).unwrap().powi(2);
    let v = integrate_1d(f, 0.0, 40.0, &spec).unwrap();
    assert!((v - want).abs() < 1e-12);
    assert!((v - airy_ai_prime(-x1).unwrap().powi(2)).abs() < 1e-12);

    // composite Simpson with 4000 panels as an independent check
    let n = 4000;
    let h = 40.0 / n as f64;
    let simpson: f64 = (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * f(i as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0;
    assert!((v - simpson).abs() < 1e-10);

    let tail = integrate_to_infinity(f, 0.0, &spec).unwrap();
    assert!((tail - want).abs() < 1e-12);
}

#[test]
fn tighter_tolerance_never_loosens_the_answer() {
    let f = |x: f64| (3.0 * x).cos() / (1.0 + x * x);
    let mut prev_bound = f64::INFINITY;
    for tol in [1e-4, 1e-6, 1e-8, 1e-10, 1e-12] {
        let spec = QuadratureSpec::new(tol, tol, 10_000).unwrap();
        let r = integrate_with_error(f, -5.0, 5.0, &spec).unwrap();
        assert!(r.error_bound <= tol.max(tol * r.value.abs()));
        assert!(r.error_bound <= prev_bound);
        prev_bound = r.error_bound;
    }
}

proptest! {
    #[test]
    fn polynomial_moments(a in -3.0f64..0.0, b in 0.1f64..3.0, k in 0u32..12) {
        let spec = QuadratureSpec::default();
        let v = integrate_1d(|x: f64| x.powi(k as i32), a, b, &spec).unwrap();
        let kp = k as i32 + 1;
        let exact = (b.powi(kp) - a.powi(kp)) / kp as f64;
        prop_assert!((v - exact).abs() <= 1e-12 * exact.abs().max(1.0));
    }

    #[test]
    fn airy_equation_holds(x in -15.0f64..10.0) {
        let h = 1e-3;
        let f = |y: f64| airy_ai(y).unwrap();
        let second = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        prop_assert!((second - x * f(x)).abs() < 1e-5 * (1.0 + x.abs()));
    }
}
