//! Complex log-gamma.
//!
//! Stirling's series on `|z| >= 10`, the Lanczos approximation (g = 7, nine
//! coefficients) below that, and the reflection formula in the left
//! half-plane. The imaginary part follows
//! the analytic continuation of `ln Γ` from the positive real axis (the same
//! branch as `scipy.special.loggamma`) for `Re z >= 1/2`; in the reflected
//! region it is only determined modulo `2π`, which is irrelevant for the
//! single exponentiation done by every caller.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::SpecFunError;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `B_{2k} / (2k (2k-1))` for k = 1..=12.
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77683.0 / 5796.0,
    -236_364_091.0 / 1_506_960.0,
];

const STIRLING_RADIUS: f64 = 10.0;

/// Principal log-gamma of a complex argument.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(SpecFunError::GammaPole(z.re));
    }
    Ok(ln_gamma_unchecked(z))
}

/// Log-gamma without the pole check. Non-positive integers give an infinite
/// real part, which exponentiates cleanly to zero when the factor sits in a
/// denominator.
pub(crate) fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let w = Complex64::new(PI * z.re, PI * z.im);
        return Complex64::new(LN_PI, 0.0) - ln_sin(w) - ln_gamma_right(Complex64::new(1.0, 0.0) - z);
    }
    ln_gamma_right(z)
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    if z.norm() >= STIRLING_RADIUS {
        stirling(z)
    } else {
        lanczos(z)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(z: Complex64) -> Complex64 {
    let w = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (w + 0.5) * t.ln() - t + series.ln()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// `ln sin(w)` without overflowing for large `|Im w|`.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if w.im > 1.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        let e = (i * w * 2.0).exp();
        -i * w + Complex64::new(0.5f64.ln(), PI / 2.0) + (Complex64::new(1.0, 0.0) - e).ln()
    } else if w.im < -1.0 {
        // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
        let e = (-i * w * 2.0).exp();
        i * w + Complex64::new(0.5f64.ln(), -PI / 2.0) + (Complex64::new(1.0, 0.0) - e).ln()
    } else {
        w.sin().ln()
    }
}

/// `ln |Γ(x)|` for real `x`; `+inf` at the poles.
pub fn ln_gamma_abs(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return f64::INFINITY;
    }
    ln_gamma_unchecked(Complex64::new(x, 0.0)).re
}

/// `Γ(x)` for real `x`.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return f64::NAN;
    }
    let magnitude = ln_gamma_abs(x).exp();
    if x > 0.0 {
        magnitude
    } else {
        // sign of Γ alternates between consecutive negative integers
        let k = (-x).floor() as i64;
        if k % 2 == 0 {
            -magnitude
        } else {
            magnitude
        }
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}
