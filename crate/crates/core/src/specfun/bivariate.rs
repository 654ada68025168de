//! Fox H function of two variables (Mittal–Gupta form, `m_1 = 0`):
//!
//! ```text
//! H[x, y] = 1/(2πi)^2 ∫∫ φ(s, t) θ_1(s) θ_2(t) x^{-s} y^{-t} ds dt,
//! φ(s, t) = Π_{j<=n_1} Γ(1 - a_j - α_j s - A_j t)
//!           / ( Π_{j>n_1} Γ(a_j + α_j s + A_j t) Π_j Γ(1 - b_j - β_j s - B_j t) ),
//! ```
//!
//! where `θ_1`, `θ_2` are univariate Fox H kernels. The double integral is a
//! tensor-product trapezoid rule over two vertical lines. When every joint
//! factor has equal scales in both variables, `φ` depends on `s + t` only and
//! is tabulated once along the anti-diagonals of the grid.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::kernel::Kernel;
use super::univariate::{truncation, FoxHSpec};
use super::{Abscissa, ContourConfig, Evaluation, SpecFunError};

/// A joint-block parameter with its scale in each variable, `(a; α, A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointParam {
    pub value: f64,
    pub scale_x: f64,
    pub scale_y: f64,
}

impl JointParam {
    pub fn new(value: f64, scale_x: f64, scale_y: f64) -> Self {
        Self { value, scale_x, scale_y }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoxHBivarSpec {
    n1: usize,
    joint_upper: Vec<JointParam>,
    joint_lower: Vec<JointParam>,
    first: FoxHSpec,
    second: FoxHSpec,
}

impl FoxHBivarSpec {
    /// `joint_upper` holds the `p_1` upper pairs (the first `n1` sit in the
    /// numerator), `joint_lower` the `q_1` lower pairs (all in the denominator).
    pub fn new(
        n1: usize,
        joint_upper: Vec<JointParam>,
        joint_lower: Vec<JointParam>,
        first: FoxHSpec,
        second: FoxHSpec,
    ) -> Result<Self, SpecFunError> {
        if n1 > joint_upper.len() {
            return Err(SpecFunError::InvalidSpec(format!(
                "n1 = {n1} exceeds p1 = {}",
                joint_upper.len()
            )));
        }
        if let Some(bad) = joint_upper
            .iter()
            .chain(&joint_lower)
            .find(|p| !(p.scale_x > 0.0 && p.scale_y > 0.0) || !p.value.is_finite())
        {
            return Err(SpecFunError::InvalidSpec(format!(
                "joint parameter ({}; {}, {}) needs positive scales",
                bad.value, bad.scale_x, bad.scale_y
            )));
        }
        let spec = Self { n1, joint_upper, joint_lower, first, second };
        spec.feasible_point()?;
        Ok(spec)
    }

    /// Joint block is empty: the function factorizes.
    pub fn is_separable(&self) -> bool {
        self.joint_upper.is_empty() && self.joint_lower.is_empty()
    }

    pub fn first(&self) -> &FoxHSpec {
        &self.first
    }

    pub fn second(&self) -> &FoxHSpec {
        &self.second
    }

    fn joint_numer(&self) -> &[JointParam] {
        &self.joint_upper[..self.n1]
    }

    fn diagonal_joint(&self) -> bool {
        self.joint_upper.iter().chain(&self.joint_lower).all(|p| p.scale_x == p.scale_y)
    }

    /// Log of the joint factor at `(s, t)`.
    fn ln_joint(&self, s: Complex64, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in self.joint_numer() {
            acc += super::ln_gamma_unchecked(1.0 - p.value - s * p.scale_x - t * p.scale_y);
        }
        for p in &self.joint_upper[self.n1..] {
            acc -= super::ln_gamma_unchecked(p.value + s * p.scale_x + t * p.scale_y);
        }
        for p in &self.joint_lower {
            acc -= super::ln_gamma_unchecked(1.0 - p.value - s * p.scale_x - t * p.scale_y);
        }
        acc
    }

    /// Real-axis envelope of the joint factor.
    fn joint_envelope(&self, c1: f64, c2: f64) -> f64 {
        let mut acc = 0.0;
        for p in self.joint_numer() {
            acc += super::ln_gamma_abs(1.0 - p.value - c1 * p.scale_x - c2 * p.scale_y);
        }
        for p in &self.joint_upper[self.n1..] {
            let x = p.value + c1 * p.scale_x + c2 * p.scale_y;
            if x > 0.0 {
                acc -= super::ln_gamma_abs(x);
            }
        }
        for p in &self.joint_lower {
            let x = 1.0 - p.value - c1 * p.scale_x - c2 * p.scale_y;
            if x > 0.0 {
                acc -= super::ln_gamma_abs(x);
            }
        }
        acc
    }

    /// Distances from `(c1, c2)` to the nearest pole in the `s` and `t`
    /// directions; negative when infeasible.
    fn margins(&self, c1: f64, c2: f64, s1: (f64, f64), s2: (f64, f64)) -> (f64, f64) {
        let mut ms = (c1 - s1.0).min(s1.1 - c1);
        let mut mt = (c2 - s2.0).min(s2.1 - c2);
        for p in self.joint_numer() {
            let slack = 1.0 - p.value - c1 * p.scale_x - c2 * p.scale_y;
            ms = ms.min(slack / p.scale_x);
            mt = mt.min(slack / p.scale_y);
        }
        (ms, mt)
    }

    /// Box to search for the contour pair: the univariate strips, with
    /// unbounded sides closed off by the joint constraints or a fixed width.
    fn search_box(&self, s1: (f64, f64), s2: (f64, f64)) -> ((f64, f64), (f64, f64)) {
        const SPAN: f64 = 8.0;
        let close = |(lo, hi): (f64, f64)| -> (f64, f64) {
            match (lo.is_finite(), hi.is_finite()) {
                (true, true) => (lo, hi),
                (true, false) => (lo, lo + SPAN),
                (false, true) => (hi - SPAN, hi),
                (false, false) => (-SPAN / 2.0, SPAN / 2.0),
            }
        };
        let (mut b1, mut b2) = (close(s1), close(s2));
        // joint numerators bound each coordinate from above given the other's lower end
        for p in self.joint_numer() {
            let rhs = 1.0 - p.value;
            if s1.1.is_infinite() && b2.0.is_finite() {
                b1.1 = b1.1.min((rhs - p.scale_y * b2.0) / p.scale_x).max(b1.0);
            }
            if s2.1.is_infinite() && b1.0.is_finite() {
                b2.1 = b2.1.min((rhs - p.scale_x * b1.0) / p.scale_y).max(b2.0);
            }
        }
        (b1, b2)
    }

    fn feasible_point(&self) -> Result<(f64, f64, f64, f64), SpecFunError> {
        self.place(Abscissa::Midpoint, |_, _| 0.0)
    }

    /// Chooses `(c1, c2)` and returns it with the pole margins.
    fn place(
        &self,
        rule: Abscissa,
        envelope: impl Fn(f64, f64) -> f64,
    ) -> Result<(f64, f64, f64, f64), SpecFunError> {
        let k1 = self.first.kernel();
        let k2 = self.second.kernel();
        let s1 = k1.strip();
        let s2 = k2.strip();
        if !(s1.0 < s1.1) {
            return Err(SpecFunError::ContourSeparation { left: s1.0, right: s1.1 });
        }
        if !(s2.0 < s2.1) {
            return Err(SpecFunError::ContourSeparation { left: s2.0, right: s2.1 });
        }
        let (b1, b2) = self.search_box(s1, s2);
        const GRID: usize = 40;
        let point = |i: usize, j: usize, b1: (f64, f64), b2: (f64, f64)| {
            (
                b1.0 + (b1.1 - b1.0) * (i as f64 + 0.5) / GRID as f64,
                b2.0 + (b2.1 - b2.0) * (j as f64 + 0.5) / GRID as f64,
            )
        };
        let mut best_margin = f64::NEG_INFINITY;
        for i in 0..GRID {
            for j in 0..GRID {
                let (c1, c2) = point(i, j, b1, b2);
                let (ms, mt) = self.margins(c1, c2, s1, s2);
                best_margin = best_margin.max(ms.min(mt));
            }
        }
        if !(best_margin > 0.0) {
            return Err(SpecFunError::ContourSeparation { left: s1.0 + s2.0, right: best_margin });
        }
        let floor = match rule {
            Abscissa::Midpoint => best_margin * 0.999,
            Abscissa::Saddle => 0.35 * best_margin,
        };
        let score = |c1: f64, c2: f64| -> Option<f64> {
            let (ms, mt) = self.margins(c1, c2, s1, s2);
            (ms.min(mt) >= floor).then(|| envelope(c1, c2))
        };
        let mut best: Option<(f64, f64, f64)> = None;
        for i in 0..GRID {
            for j in 0..GRID {
                let (c1, c2) = point(i, j, b1, b2);
                if let Some(v) = score(c1, c2) {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((c1, c2, v));
                    }
                }
            }
        }
        let (mut c1, mut c2, mut val) = best.expect("grid point achieving the best margin is admissible");
        // pattern search refinement
        let mut step = ((b1.1 - b1.0).max(b2.1 - b2.0)) / GRID as f64;
        while rule == Abscissa::Saddle && step > 1e-4 {
            let mut moved = false;
            for (d1, d2) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let (n1, n2) = (c1 + d1 * step, c2 + d2 * step);
                if let Some(v) = score(n1, n2) {
                    if v < val {
                        c1 = n1;
                        c2 = n2;
                        val = v;
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        let (ms, mt) = self.margins(c1, c2, s1, s2);
        Ok((c1, c2, ms, mt))
    }
}

pub fn fox_h_bivariate(spec: &FoxHBivarSpec, x: f64, y: f64) -> Result<Evaluation, SpecFunError> {
    fox_h_bivariate_with(spec, x, y, &ContourConfig::bivariate())
}

pub fn fox_h_bivariate_with(
    spec: &FoxHBivarSpec,
    x: f64,
    y: f64,
    cfg: &ContourConfig,
) -> Result<Evaluation, SpecFunError> {
    cfg.validate()?;
    for v in [x, y] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(SpecFunError::NonPositiveArgument(v));
        }
    }
    let (lx, ly) = (x.ln(), y.ln());
    let k1 = spec.first.kernel();
    let k2 = spec.second.kernel();
    let (c1, c2, ms, mt) = spec.place(cfg.abscissa, |c1, c2| {
        spec.joint_envelope(c1, c2) + k1.ln_envelope(c1) + k2.ln_envelope(c2) - c1 * lx - c2 * ly
    })?;

    let ln_psi = |u: f64, v: f64| -> Complex64 {
        let s = Complex64::new(c1, u);
        let t = Complex64::new(c2, v);
        spec.ln_joint(s, t) + k1.ln_eval(s) + k2.ln_eval(t) - s * lx - t * ly
    };
    let (half_u, half_v) = bivariate_truncation(&ln_psi, cfg.max_half_length).ok_or(
        SpecFunError::NotConverged { estimate: f64::NAN, error: f64::INFINITY, nodes: 0 },
    )?;

    let freq = 1.0 + lx.abs().max(ly.abs());
    let mut h = (0.5 * ms.min(mt)).min(1.0).min(2.0 / freq).min(half_u.min(half_v) / 8.0);
    let diagonal = spec.diagonal_joint();
    let mut previous: Option<f64> = None;
    let mut nodes_total = 0;
    loop {
        let n1 = (half_u / h).ceil() as usize;
        let n2 = (half_v / h).ceil() as usize;
        if n1.max(n2) > cfg.node_budget {
            let (estimate, error) = previous.map_or((f64::NAN, f64::INFINITY), |p| (p, f64::INFINITY));
            return Err(SpecFunError::NotConverged { estimate, error, nodes: nodes_total });
        }
        let (sum, abs_sum) = if diagonal {
            tensor_sum_diagonal(spec, &k1, &k2, (c1, c2), (lx, ly), h, n1, n2)
        } else {
            tensor_sum_full(spec, &k1, &k2, (c1, c2), (lx, ly), h, n1, n2)
        };
        nodes_total += (2 * n1 + 1) * (2 * n2 + 1);
        let scale = h * h / (4.0 * PI * PI);
        let value = sum * scale;
        if let Some(prev) = previous {
            let roundoff = 8.0 * f64::EPSILON * abs_sum * scale;
            let error = (value - prev).abs() + roundoff;
            if cfg.accepts(value, error) {
                return Ok(Evaluation { value, error, nodes: nodes_total });
            }
        }
        previous = Some(value);
        h *= 0.5;
    }
}

fn bivariate_truncation(ln_psi: &impl Fn(f64, f64) -> Complex64, max_half: f64) -> Option<(f64, f64)> {
    // first pass: axis profiles, then widen until every cross-section has
    // dropped below the overall peak by the same margin
    let mut hu = truncation(|u| ln_psi(u, 0.0).re, max_half)?;
    let mut hv = truncation(|v| ln_psi(0.0, v).re, max_half)?;
    let count = 24;
    let ticks = |half: f64| (0..=count).map(move |k| -half + 2.0 * half * k as f64 / count as f64);
    let mut peak = f64::NEG_INFINITY;
    for u in ticks(hu) {
        for v in ticks(hv) {
            peak = peak.max(ln_psi(u, v).re);
        }
    }
    for _ in 0..3 {
        let probe = |fixed_other: f64, along_u: bool| {
            ticks(fixed_other)
                .map(|w| {
                    let w_env = move |z: f64| if along_u { ln_psi(z, w).re } else { ln_psi(w, z).re };
                    extent_above(w_env, peak - TRUNCATION_DROP, max_half)
                })
                .try_fold(0.0f64, |acc, t| t.map(|t| acc.max(t)))
        };
        let nu = probe(hv, true)?;
        let nv = probe(hu, false)?;
        if nu <= hu && nv <= hv {
            break;
        }
        hu = hu.max(nu);
        hv = hv.max(nv);
    }
    Some((hu, hv))
}

const TRUNCATION_DROP: f64 = 46.0;

/// Smallest `y ≥ 0` (on a half-unit grid) past which `log_env` stays below
/// `floor` while decreasing.
fn extent_above(log_env: impl Fn(f64) -> f64, floor: f64, max_half: f64) -> Option<f64> {
    let mut prev = log_env(0.0);
    let mut last_above = if prev >= floor { 0.0 } else { f64::NAN };
    let mut y = 0.0;
    let mut below = 0;
    while y < max_half {
        y += 0.5;
        let v = log_env(y);
        if v >= floor {
            last_above = y;
            below = 0;
        } else if v <= prev {
            below += 1;
            if below >= 2 {
                return Some(if last_above.is_nan() { 0.0 } else { last_above + 0.5 });
            }
        }
        prev = v;
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn tensor_sum_diagonal(
    spec: &FoxHBivarSpec,
    k1: &Kernel,
    k2: &Kernel,
    (c1, c2): (f64, f64),
    (lx, ly): (f64, f64),
    h: f64,
    n1: usize,
    n2: usize,
) -> (f64, f64) {
    let a: Vec<Complex64> = (-(n1 as i64)..=n1 as i64)
        .map(|i| {
            let s = Complex64::new(c1, i as f64 * h);
            (k1.ln_eval(s) - s * lx).exp()
        })
        .collect();
    let b: Vec<Complex64> = (-(n2 as i64)..=n2 as i64)
        .map(|j| {
            let t = Complex64::new(c2, j as f64 * h);
            (k2.ln_eval(t) - t * ly).exp()
        })
        .collect();
    let offset = (n1 + n2) as i64;
    let joint: Vec<Complex64> = (-offset..=offset)
        .map(|k| {
            // equal scales: put the whole imaginary part on s
            let s = Complex64::new(c1, k as f64 * h);
            let t = Complex64::new(c2, 0.0);
            spec.ln_joint(s, t).exp()
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_total = 0.0;
    for (i, ai) in a.iter().enumerate() {
        let mut inner = Complex64::new(0.0, 0.0);
        let mut inner_abs = 0.0;
        // index of s+t imaginary part: (i - n1) + (j - n2) + offset = i + j
        for (j, bj) in b.iter().enumerate() {
            let term = bj * joint[i + j];
            inner += term;
            inner_abs += term.norm();
        }
        total += ai * inner;
        abs_total += ai.norm() * inner_abs;
    }
    (total.re, abs_total)
}

#[allow(clippy::too_many_arguments)]
fn tensor_sum_full(
    spec: &FoxHBivarSpec,
    k1: &Kernel,
    k2: &Kernel,
    (c1, c2): (f64, f64),
    (lx, ly): (f64, f64),
    h: f64,
    n1: usize,
    n2: usize,
) -> (f64, f64) {
    let s_nodes: Vec<Complex64> = (-(n1 as i64)..=n1 as i64).map(|i| Complex64::new(c1, i as f64 * h)).collect();
    let t_nodes: Vec<Complex64> = (-(n2 as i64)..=n2 as i64).map(|j| Complex64::new(c2, j as f64 * h)).collect();
    let a: Vec<Complex64> = s_nodes.iter().map(|&s| k1.ln_eval(s) - s * lx).collect();
    let b: Vec<Complex64> = t_nodes.iter().map(|&t| k2.ln_eval(t) - t * ly).collect();
    let mut total = 0.0;
    let mut abs_total = 0.0;
    for (s, ai) in s_nodes.iter().zip(&a) {
        for (t, bj) in t_nodes.iter().zip(&b) {
            let v = (spec.ln_joint(*s, *t) + ai + bj).exp();
            total += v.re;
            abs_total += v.norm();
        }
    }
    (total, abs_total)
}
