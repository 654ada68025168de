use num_complex::Complex64;

use super::gamma::{ln_gamma_abs, ln_gamma_unchecked};

/// `Γ(offset + slope·s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GammaTerm {
    pub offset: f64,
    pub slope: f64,
}

impl GammaTerm {
    pub fn new(offset: f64, slope: f64) -> Self {
        Self { offset, slope }
    }

    fn at(&self, s: Complex64) -> Complex64 {
        Complex64::new(self.offset + self.slope * s.re, self.slope * s.im)
    }
}

/// A ratio of gamma products in one Mellin variable.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Kernel {
    pub numer: Vec<GammaTerm>,
    pub denom: Vec<GammaTerm>,
}

impl Kernel {
    /// Open strip `(left, right)` that separates the pole families of the numerator.
    pub fn strip(&self) -> (f64, f64) {
        let mut left = f64::NEG_INFINITY;
        let mut right = f64::INFINITY;
        for t in &self.numer {
            if t.slope > 0.0 {
                left = left.max(-t.offset / t.slope);
            } else if t.slope < 0.0 {
                right = right.min(t.offset / -t.slope);
            }
        }
        (left, right)
    }

    /// Exponential decay rate along vertical lines, in units of `π/2 · |Im s|`.
    pub fn decay(&self) -> f64 {
        self.numer.iter().map(|t| t.slope.abs()).sum::<f64>()
            - self.denom.iter().map(|t| t.slope.abs()).sum::<f64>()
    }

    pub fn ln_eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.numer {
            acc += ln_gamma_unchecked(t.at(s));
        }
        for t in &self.denom {
            acc -= ln_gamma_unchecked(t.at(s));
        }
        acc
    }

    /// Real-axis envelope used to place the contour. Denominator factors only
    /// count where their argument is positive, so the zeros of `1/Γ` do not
    /// attract the abscissa.
    pub fn ln_envelope(&self, c: f64) -> f64 {
        let mut acc = 0.0;
        for t in &self.numer {
            acc += ln_gamma_abs(t.offset + t.slope * c);
        }
        for t in &self.denom {
            let x = t.offset + t.slope * c;
            if x > 0.0 {
                acc -= ln_gamma_abs(x);
            }
        }
        acc
    }
}

/// Minimizes `f` on `[lo, hi]`: coarse scan, then golden-section refinement
/// around the best scan point.
pub(crate) fn minimize_1d(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    if !(hi > lo) {
        return lo;
    }
    const SCAN: usize = 48;
    let step = (hi - lo) / SCAN as f64;
    let mut best = lo;
    let mut best_val = f(lo);
    for k in 1..=SCAN {
        let x = lo + step * k as f64;
        let v = f(x);
        if v < best_val || best_val.is_nan() {
            best = x;
            best_val = v;
        }
    }
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..40 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    if f(x) <= best_val {
        x
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_from_mixed_terms() {
        let k = Kernel {
            numer: vec![GammaTerm::new(0.5, 1.0), GammaTerm::new(2.0, 2.0), GammaTerm::new(1.0, -1.0)],
            denom: vec![GammaTerm::new(1.0, 1.0)],
        };
        assert_eq!(k.strip(), (-0.5, 1.0));
        assert_eq!(k.decay(), 3.0);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let x = minimize_1d(-3.0, 5.0, |x| (x - 1.234).powi(2));
        assert!((x - 1.234).abs() < 1e-6);
    }
}
