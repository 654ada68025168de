//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals, and a
//! log-domain wrapper for integrals over `(0, ∞)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub(crate) enum QuadratureError {
    #[error("integrand evaluation failed: {0}")]
    Integrand(String),
    #[error("adaptive quadrature hit its subdivision limit (estimate {value:e}, error {error:e})")]
    Subdivision { value: f64, error: f64 },
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F, E>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64), E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kron * half, ((kron - gauss) * half).abs()))
}

/// Adaptive integration over `[a, b]` to `max(abs_tol, rel_tol·|I|)`.
pub(crate) fn integrate<F, E>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<Integral, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: std::fmt::Display,
{
    let mut eval = |x: f64| f(x).map_err(|e| QuadratureError::Integrand(e.to_string()));
    let mut heap = BinaryHeap::new();
    let (v, e) = kronrod(&mut eval, a, b)?;
    heap.push(Segment { a, b, value: v, error: e });
    let mut evaluations = 15;
    loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral { value, error, evaluations });
        }
        if heap.len() >= max_segments {
            return Err(QuadratureError::Subdivision { value, error });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod(&mut eval, worst.a, mid)?;
        let (v2, e2) = kronrod(&mut eval, mid, worst.b)?;
        evaluations += 30;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }
}

/// `∫_0^∞ g(x) dx` via `x = e^u`. The `u`-range grows from `ln center ± 4`
/// in steps until `|x g(x)|` falls below `tail` at both ends.
pub(crate) fn integrate_positive_axis<F, E>(
    mut g: F,
    center: f64,
    tail: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: std::fmt::Display,
{
    let mut h = |u: f64| -> Result<f64, E> {
        let x = u.exp();
        if x == 0.0 || !x.is_finite() {
            return Ok(0.0);
        }
        Ok(g(x)? * x)
    };
    let c = center.ln();
    let mut lo = c - 4.0;
    let mut hi = c + 4.0;
    let mut probe = |u: f64| -> Result<f64, QuadratureError> {
        h(u).map(f64::abs).map_err(|e| QuadratureError::Integrand(e.to_string()))
    };
    // both ends must stay small over two consecutive probes
    let mut small = 0;
    while lo > c - 200.0 && small < 2 {
        lo -= 2.0;
        small = if probe(lo)? < tail { small + 1 } else { 0 };
    }
    small = 0;
    while hi < c + 200.0 && small < 2 {
        hi += 2.0;
        small = if probe(hi)? < tail { small + 1 } else { 0 };
    }
    integrate(h, lo, hi, abs_tol, rel_tol, 2000)
}
