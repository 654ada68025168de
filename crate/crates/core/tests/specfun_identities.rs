mod common;

use common::bessel_k;
use fsorf_secrecy::specfun::{
    fox_h, fox_h_bivariate, gamma, ln_gamma, meijer_g, meijer_g_large_argument, FoxHBivarSpec, FoxHSpec, JointParam,
    MeijerGSpec, ScaledParam,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn exponential_rational_and_bessel_identities() {
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    let rational = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
    let k0 = MeijerGSpec::new(2, 0, vec![], vec![0.0, 0.0]).unwrap();
    let k13 = MeijerGSpec::new(2, 0, vec![], vec![1.0 / 6.0, -1.0 / 6.0]).unwrap();
    for x in log_grid(0.01, 10.0, 60) {
        assert!(rel(meijer_g(&exp, x).unwrap().value, (-x).exp()) < 1e-8, "exp at {x}");
        assert!(rel(meijer_g(&rational, x).unwrap().value, 1.0 / (1.0 + x)) < 1e-8, "1/(1+x) at {x}");
        let z = 2.0 * x.sqrt();
        assert!(rel(meijer_g(&k0, x).unwrap().value, 2.0 * bessel_k(0.0, z)) < 1e-8, "K0 at {x}");
        assert!(rel(meijer_g(&k13, x).unwrap().value, 2.0 * bessel_k(1.0 / 3.0, z)) < 1e-8, "K1/3 at {x}");
    }
}

#[test]
fn upper_incomplete_gamma_identity() {
    // G^{2,0}_{1,2}[x | 1; 0, a] = Γ(a, x)
    let a = 2.5;
    let spec = MeijerGSpec::new(2, 0, vec![1.0], vec![0.0, a]).unwrap();
    for x in [0.1, 1.0, 4.0] {
        let oracle = common::simpson(|t| t.powf(a - 1.0) * (-t).exp(), x, x + 80.0, 40_000);
        assert!(rel(meijer_g(&spec, x).unwrap().value, oracle) < 1e-8, "Γ(a,x) at {x}");
    }
}

#[test]
fn fox_h_with_scale_matches_stretched_exponential() {
    // H^{1,0}_{0,1}[x | (b, B)] = x^{b/B} e^{-x^{1/B}} / B
    for (b, big_b) in [(0.0, 0.5), (0.3, 2.0), (1.0, 1.5)] {
        let spec = FoxHSpec::new(1, 0, vec![], vec![ScaledParam::new(b, big_b)]).unwrap();
        for x in [0.2f64, 1.0, 3.0] {
            let oracle = x.powf(b / big_b) * (-x.powf(1.0 / big_b)).exp() / big_b;
            assert!(rel(fox_h(&spec, x).unwrap().value, oracle) < 1e-8, "({b}, {big_b}) at {x}");
        }
    }
}

#[test]
fn bivariate_beta_kernel_on_grid() {
    let unit = FoxHSpec::new(1, 0, vec![], vec![ScaledParam::unit(0.0)]).unwrap();
    let spec = FoxHBivarSpec::new(1, vec![JointParam::new(0.0, 1.0, 1.0)], vec![], unit.clone(), unit).unwrap();
    let pts: Vec<f64> = log_grid(0.05, 20.0, 10).collect();
    for &x in &pts {
        for &y in &pts {
            let v = fox_h_bivariate(&spec, x, y).unwrap().value;
            assert!((v - 1.0 / (1.0 + x + y)).abs() < 1e-6, "({x}, {y}): {v}");
        }
    }
}

#[test]
fn large_argument_expansion_tracks_the_function() {
    // G^{1,1}_{1,1}[z | 0; 0] = 1/(1+z): leading large-z term is 1/z
    let spec = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
    for z in [1e3, 1e5] {
        let asym = meijer_g_large_argument(&spec, z).unwrap();
        assert!(rel(asym, 1.0 / (1.0 + z)) < 2.0 / z);
    }
}

#[test]
fn no_separating_contour_is_an_error() {
    // Γ(s) Γ(1 - 2 - s): poles at -k and at 1 + k overlap the strip [0, -1]
    let bad = MeijerGSpec::new(1, 1, vec![2.0], vec![0.0]);
    assert!(bad.is_err() || meijer_g(&bad.unwrap(), 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        prop_assert!(rel(gamma(x + 1.0), x * gamma(x)) < 1e-12);
    }

    #[test]
    fn complex_ln_gamma_recurrence(re in -8.0f64..12.0, im in -40.0f64..40.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 0.1 && (z + 1.0).norm() > 0.1);
        let lhs = ln_gamma(z + 1.0).unwrap();
        let rhs = ln_gamma(z).unwrap() + z.ln();
        let d = lhs - rhs;
        // equal modulo 2πi
        let k = (d.im / (2.0 * std::f64::consts::PI)).round();
        prop_assert!(d.re.abs() < 1e-10 * (1.0 + lhs.re.abs()));
        prop_assert!((d.im - 2.0 * std::f64::consts::PI * k).abs() < 1e-9 * (1.0 + lhs.im.abs()));
    }

    #[test]
    fn exponential_identity_anywhere(x in 0.01f64..10.0) {
        let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
        prop_assert!(rel(meijer_g(&spec, x).unwrap().value, (-x).exp()) < 1e-8);
    }
}
