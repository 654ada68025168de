use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_gamma_abs;
use super::kernel::{minimize_1d, GammaTerm, Kernel};
use super::{Abscissa, ContourConfig, Evaluation, SpecFunError};

/// Parameter of a Fox H function together with its scale coefficient, the
/// `(a, A)` pairs in `H^{m,n}_{p,q}[x | (a_i, A_i); (b_j, B_j)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledParam {
    pub value: f64,
    pub scale: f64,
}

impl ScaledParam {
    pub fn new(value: f64, scale: f64) -> Self {
        Self { value, scale }
    }

    pub fn unit(value: f64) -> Self {
        Self { value, scale: 1.0 }
    }

    /// Expands the `(K, [Q]_k)` shorthand: every entry of `values` paired with
    /// the same scale.
    pub fn repeated(values: &[f64], scale: f64) -> Vec<Self> {
        values.iter().map(|&v| Self::new(v, scale)).collect()
    }
}

/// `G^{m,n}_{p,q}[x | a_1..a_p; b_1..b_q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, SpecFunError> {
        // validation is shared with the Fox H form
        FoxHSpec::new(
            m,
            n,
            a.iter().map(|&v| ScaledParam::unit(v)).collect(),
            b.iter().map(|&v| ScaledParam::unit(v)).collect(),
        )?;
        Ok(Self { m, n, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.a.len()
    }
    pub fn q(&self) -> usize {
        self.b.len()
    }
    pub fn a(&self) -> &[f64] {
        &self.a
    }
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn to_fox_h(&self) -> FoxHSpec {
        FoxHSpec {
            m: self.m,
            n: self.n,
            a: self.a.iter().map(|&v| ScaledParam::unit(v)).collect(),
            b: self.b.iter().map(|&v| ScaledParam::unit(v)).collect(),
        }
    }
}

/// `H^{m,n}_{p,q}[x | (a_i, A_i); (b_j, B_j)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHSpec {
    m: usize,
    n: usize,
    a: Vec<ScaledParam>,
    b: Vec<ScaledParam>,
}

impl FoxHSpec {
    pub fn new(m: usize, n: usize, a: Vec<ScaledParam>, b: Vec<ScaledParam>) -> Result<Self, SpecFunError> {
        if m > b.len() || n > a.len() {
            return Err(SpecFunError::InvalidSpec(format!(
                "block sizes m={m}, n={n} exceed q={}, p={}",
                b.len(),
                a.len()
            )));
        }
        if let Some(bad) = a.iter().chain(&b).find(|p| !(p.scale > 0.0) || !p.value.is_finite()) {
            return Err(SpecFunError::InvalidSpec(format!(
                "parameter ({}, {}) needs a finite value and positive scale",
                bad.value, bad.scale
            )));
        }
        let spec = Self { m, n, a, b };
        let kernel = spec.kernel();
        let (left, right) = kernel.strip();
        if !(left < right) {
            return Err(SpecFunError::ContourSeparation { left, right });
        }
        if !(kernel.decay() > 0.0) {
            return Err(SpecFunError::InvalidSpec(format!(
                "Mellin-Barnes integrand does not decay along vertical lines (a* = {})",
                kernel.decay()
            )));
        }
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> &[ScaledParam] {
        &self.a
    }
    pub fn b(&self) -> &[ScaledParam] {
        &self.b
    }

    pub fn all_scales_one(&self) -> bool {
        self.a.iter().chain(&self.b).all(|p| p.scale == 1.0)
    }

    pub(crate) fn kernel(&self) -> Kernel {
        let mut k = Kernel::default();
        for (j, p) in self.b.iter().enumerate() {
            if j < self.m {
                k.numer.push(GammaTerm::new(p.value, p.scale));
            } else {
                k.denom.push(GammaTerm::new(1.0 - p.value, -p.scale));
            }
        }
        for (j, p) in self.a.iter().enumerate() {
            if j < self.n {
                k.numer.push(GammaTerm::new(1.0 - p.value, -p.scale));
            } else {
                k.denom.push(GammaTerm::new(p.value, p.scale));
            }
        }
        k
    }
}

pub fn meijer_g(spec: &MeijerGSpec, x: f64) -> Result<Evaluation, SpecFunError> {
    meijer_g_with(spec, x, &ContourConfig::univariate())
}

pub fn meijer_g_with(spec: &MeijerGSpec, x: f64, cfg: &ContourConfig) -> Result<Evaluation, SpecFunError> {
    fox_h_with(&spec.to_fox_h(), x, cfg)
}

pub fn fox_h(spec: &FoxHSpec, x: f64) -> Result<Evaluation, SpecFunError> {
    fox_h_with(spec, x, &ContourConfig::univariate())
}

pub fn fox_h_with(spec: &FoxHSpec, x: f64, cfg: &ContourConfig) -> Result<Evaluation, SpecFunError> {
    cfg.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::NonPositiveArgument(x));
    }
    line_integral(&spec.kernel(), x.ln(), cfg)
}

/// Picks the abscissa inside `(left, right)` and the distance from it to the
/// nearest pole.
pub(crate) fn place_abscissa(
    left: f64,
    right: f64,
    rule: Abscissa,
    envelope: impl Fn(f64) -> f64,
) -> Result<(f64, f64), SpecFunError> {
    if !(left < right) {
        return Err(SpecFunError::ContourSeparation { left, right });
    }
    let width = right - left;
    let margin = if width.is_finite() { 0.02 * width.min(1.0) } else { 0.02 };
    let (lo, hi) = match (left.is_finite(), right.is_finite()) {
        (true, true) => (left + margin, right - margin),
        (true, false) => {
            let lo = left + margin;
            let mut hi = lo + 4.0;
            while hi - lo < 1e4 && envelope(hi * 1.5 - 0.5 * lo) < envelope(hi) {
                hi = hi * 1.5 - 0.5 * lo + 1.0;
            }
            (lo, hi + 1.0)
        }
        (false, true) => {
            let hi = right - margin;
            let mut lo = hi - 4.0;
            while hi - lo < 1e4 && envelope(lo * 1.5 - 0.5 * hi) < envelope(lo) {
                lo = lo * 1.5 - 0.5 * hi - 1.0;
            }
            (lo - 1.0, hi)
        }
        (false, false) => (-4.0, 4.0),
    };
    let c = match rule {
        Abscissa::Saddle => minimize_1d(lo, hi, &envelope),
        Abscissa::Midpoint => {
            if width.is_finite() {
                0.5 * (left + right)
            } else if left.is_finite() {
                left + 1.0
            } else {
                right - 1.0
            }
        }
    };
    let dist = (c - left).min(right - c);
    Ok((c, dist))
}

/// `1/(2πi) ∫ Φ(s) e^{-s ln x} ds` along `Re s = c`.
fn line_integral(kernel: &Kernel, ln_x: f64, cfg: &ContourConfig) -> Result<Evaluation, SpecFunError> {
    let (left, right) = kernel.strip();
    let (c, dist) = place_abscissa(left, right, cfg.abscissa, |c| kernel.ln_envelope(c) - c * ln_x)?;

    let integrand = |y: f64| -> Complex64 {
        let s = Complex64::new(c, y);
        (kernel.ln_eval(s) - s * ln_x).exp()
    };
    let log_env = |y: f64| kernel.ln_eval(Complex64::new(c, y)).re - c * ln_x;

    // deep in a tail the whole line sits below the smallest subnormal
    const UNDERFLOW: f64 = -760.0;
    if log_env(0.0) < UNDERFLOW {
        let steps = cfg.max_half_length.ceil() as usize;
        let peak = (0..=steps).map(|k| log_env(k as f64)).fold(f64::NEG_INFINITY, f64::max);
        if peak < UNDERFLOW {
            return Ok(Evaluation { value: 0.0, error: 0.0, nodes: steps + 1 });
        }
    }

    let half_length = truncation(log_env, cfg.max_half_length).ok_or(SpecFunError::NotConverged {
        estimate: f64::NAN,
        error: f64::INFINITY,
        nodes: 0,
    })?;

    let mut h = (0.5 * dist).min(1.0).min(2.0 / (1.0 + ln_x.abs())).min(half_length / 16.0);
    let mut count = (half_length / h).ceil() as usize;
    let g0 = integrand(0.0).re;
    let mut sum = 0.0;
    let mut abs_sum = g0.abs() * 0.5;
    for k in 1..=count {
        let v = integrand(k as f64 * h).re;
        sum += v;
        abs_sum += v.abs();
    }
    let mut nodes = count + 1;
    let mut estimate = h * (0.5 * g0 + sum);
    let mut level = 0;
    loop {
        h *= 0.5;
        let mut odd = 0.0;
        for k in 0..count {
            let v = integrand((2 * k + 1) as f64 * h).re;
            odd += v;
            abs_sum += v.abs();
        }
        nodes += count;
        count *= 2;
        sum += odd;
        let next = h * (0.5 * g0 + sum);
        let diff = (next - estimate).abs();
        estimate = next;
        level += 1;
        let roundoff = 4.0 * f64::EPSILON * h * abs_sum;
        let value = estimate / PI;
        let error = (diff + roundoff) / PI;
        if level >= 1 && cfg.accepts(value, error) {
            return Ok(Evaluation { value, error, nodes });
        }
        if nodes + count > cfg.node_budget {
            return Err(SpecFunError::NotConverged { estimate: value, error, nodes });
        }
    }
}

/// Smallest `Y` beyond which the log-envelope stays 46 nats (~1e-20) below
/// its peak; marches outward in unit steps.
pub(crate) fn truncation(log_env: impl Fn(f64) -> f64, max_half_length: f64) -> Option<f64> {
    const DROP: f64 = 46.0;
    let mut peak = log_env(0.0);
    let mut y = 0.0;
    let mut below = 0;
    while y < max_half_length {
        y += 0.5;
        let v = log_env(y);
        if v > peak {
            peak = v;
            below = 0;
        } else if v < peak - DROP {
            below += 1;
            if below >= 2 && y >= 2.0 {
                return Some(y);
            }
        } else {
            below = 0;
        }
    }
    None
}

fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x == x.round() {
        return None;
    }
    let sign = if x > 0.0 || ((-x).floor() as i64) % 2 == 1 { 1.0 } else { -1.0 };
    Some((ln_gamma_abs(x), sign))
}

/// Leading large-`z` behaviour of `G^{m,n}_{p,q}[z]`: the first residue of
/// each `Γ(1 - a_k - s)` pole family,
///
/// ```text
/// Σ_{k<=n} Π_{l<=n, l≠k} Γ(a_k - a_l) Π_{l<=m} Γ(1 + b_l - a_k)
///          / ( Π_{l>n} Γ(1 + a_l - a_k) Π_{l>m} Γ(a_k - b_l) ) · z^{a_k - 1}.
/// ```
///
/// Gamma products are accumulated in log space. A numerator pole means two
/// pole families collide (higher-order pole) and is reported as a
/// degenerate expansion; a denominator pole zeroes its term.
pub fn meijer_g_large_argument(spec: &MeijerGSpec, z: f64) -> Result<f64, SpecFunError> {
    if !(z > 0.0) {
        return Err(SpecFunError::NonPositiveArgument(z));
    }
    let (m, n) = (spec.m, spec.n);
    let (a, b) = (&spec.a, &spec.b);
    let mut total = 0.0;
    for k in 0..n {
        let ak = a[k];
        let mut ln_mag = (ak - 1.0) * z.ln();
        let mut sign = 1.0;
        let mut zero = false;
        let mut numer = |x: f64, what: &str| -> Result<(), SpecFunError> {
            match ln_gamma_signed(x) {
                Some((l, s)) => {
                    ln_mag += l;
                    sign *= s;
                    Ok(())
                }
                None => Err(SpecFunError::DegenerateExpansion(format!(
                    "Γ({x}) in the {what} of term {}",
                    k + 1
                ))),
            }
        };
        for (l, &al) in a.iter().enumerate().take(n) {
            if l != k {
                numer(ak - al, "upper-parameter product")?;
            }
        }
        for &bl in b.iter().take(m) {
            numer(1.0 + bl - ak, "lower-parameter product")?;
        }
        let mut denom = |x: f64| match ln_gamma_signed(x) {
            Some((l, s)) => {
                ln_mag -= l;
                sign *= s;
            }
            None => zero = true,
        };
        for &al in a.iter().skip(n) {
            denom(1.0 + al - ak);
        }
        for &bl in b.iter().skip(m) {
            denom(ak - bl);
        }
        if !zero {
            total += sign * ln_mag.exp();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: usize, n: usize, a: &[f64], b: &[f64], x: f64) -> f64 {
        let spec = MeijerGSpec::new(m, n, a.to_vec(), b.to_vec()).unwrap();
        meijer_g(&spec, x).unwrap().value
    }

    #[test]
    fn exponential() {
        assert!((g(1, 0, &[], &[0.0], 1.0) - (-1f64).exp()).abs() < 1e-12);
        assert!((g(1, 0, &[], &[0.0], 7.5) - (-7.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rational() {
        assert!((g(1, 1, &[0.0], &[0.0], 1.0) - 0.5).abs() < 1e-12);
        assert!((g(1, 1, &[0.0], &[0.0], 0.01) - 1.0 / 1.01).abs() < 1e-10);
    }

    #[test]
    fn bessel_k_value() {
        // 2 K_1(2)
        assert!((g(2, 0, &[], &[0.5, -0.5], 1.0) - 0.279_731_763_633_044_9).abs() < 1e-10);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            MeijerGSpec::new(2, 0, vec![], vec![0.0]),
            Err(SpecFunError::InvalidSpec(_))
        ));
        // Γ(s) and Γ(-s): poles at 0 from both sides
        assert!(matches!(
            MeijerGSpec::new(1, 1, vec![1.0], vec![0.0]),
            Err(SpecFunError::ContourSeparation { .. })
        ));
        // G^{0,1}_{1,1}: no decay
        assert!(MeijerGSpec::new(0, 1, vec![0.0], vec![0.0]).is_err());
        let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
        assert!(matches!(meijer_g(&spec, 0.0), Err(SpecFunError::NonPositiveArgument(_))));
        assert!(FoxHSpec::new(1, 0, vec![], vec![ScaledParam::new(0.0, -1.0)]).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
        let cfg = ContourConfig { node_budget: 64, ..ContourConfig::univariate() }.with_tolerances(1e-300, 1e-300);
        assert!(matches!(meijer_g_with(&spec, 3.0, &cfg), Err(SpecFunError::NotConverged { .. })));
    }

    #[test]
    fn midpoint_rule_agrees_with_saddle() {
        let spec = MeijerGSpec::new(3, 0, vec![2.21], vec![1.21, 2.296, 1.0]).unwrap();
        let cfg = ContourConfig { abscissa: Abscissa::Midpoint, ..ContourConfig::univariate() };
        let a = meijer_g(&spec, 0.8).unwrap().value;
        let b = meijer_g_with(&spec, 0.8, &cfg).unwrap().value;
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn large_argument_of_rational_function() {
        // 1/(1+x) ~ 1/x: G^{1,1}_{1,1}[x|0;0], a_1 = 0 → Γ(1+0-0) x^{-1}
        let spec = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
        let v = meijer_g_large_argument(&spec, 1e6).unwrap();
        assert!((v - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn colliding_families_are_degenerate() {
        let spec = MeijerGSpec::new(1, 2, vec![0.0, 1.0], vec![0.5]).unwrap();
        assert!(matches!(
            meijer_g_large_argument(&spec, 10.0),
            Err(SpecFunError::DegenerateExpansion(_))
        ));
    }
}
