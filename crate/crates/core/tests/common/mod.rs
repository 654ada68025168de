//! Independent numerical oracles and scenario builders shared by the
//! integration tests. Nothing here calls the crate's own quadrature or
//! special-function code.

#![allow(dead_code)]

use fsorf_secrecy::channels::{db_to_linear, gamma_gamma_link, Detection, MalagaLink, NakagamiLink, OpticalLink, Turbulence};
use fsorf_secrecy::secrecy::SecrecyScenario;

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Trapezoid rule with `n` intervals; spectrally accurate for smooth
/// integrands that decay at both ends.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h)).sum();
    h * (inner + 0.5 * (f(a) + f(b)))
}

/// `∫_0^∞ f(x) dx` by the trapezoid rule in `ln x` over `center·e^{±half_width}`.
pub fn log_axis(f: impl Fn(f64) -> f64, center: f64, half_width: f64, n: usize) -> f64 {
    let c = center.ln();
    trapezoid(|u| {
        let x = u.exp();
        f(x) * x
    }, c - half_width, c + half_width, n)
}

/// `∫_0^γ f(x) dx` via `x = γ exp(−e^w)`, which decays double-exponentially
/// at the upper end and is smooth at `x = γ`.
pub fn below(f: impl Fn(f64) -> f64, gamma: f64, n: usize) -> f64 {
    trapezoid(|w| {
        let e = w.exp();
        let x = gamma * (-e).exp();
        if x == 0.0 {
            return 0.0;
        }
        f(x) * x * e
    }, -30.0, 4.5, n)
}

/// `K_ν(z) = ∫_0^∞ e^{−z cosh t} cosh(νt) dt`
pub fn bessel_k(nu: f64, z: f64) -> f64 {
    // the integrand is below e^{-745} once z cosh t > 745
    let t_max = (745.0 / z).acosh().max(1.0);
    simpson(|t| (-z * t.cosh()).exp() * (nu * t).cosh(), 0.0, t_max, 4000)
}

pub const PRESET_SE_DB: f64 = -10.0;
pub const PRESET_SR_DB: f64 = 30.0;

pub fn malaga(t: Turbulence, detection: Detection, xi: f64, snr_db: f64) -> MalagaLink {
    MalagaLink {
        alpha: t.alpha(),
        beta: t.beta(),
        rho: 0.95,
        b0: 0.25,
        omega: 0.5,
        phase_diff: std::f64::consts::FRAC_PI_2,
        xi,
        detection,
        avg_snr: db_to_linear(snr_db),
    }
}

pub fn gamma_gamma(t: Turbulence, detection: Detection, xi: f64, snr_db: f64) -> OpticalLink {
    gamma_gamma_link(t.alpha(), t.beta() as f64, xi, detection, db_to_linear(snr_db)).into()
}

/// S→R at 30 dB, S→E₁ at −10 dB with the same turbulence, R→D Nakagami.
pub fn scenario(t: Turbulence, detection: Detection, xi: f64, m_rd: u32, rd_db: f64, dual: bool) -> SecrecyScenario {
    SecrecyScenario {
        sr_link: malaga(t, detection, xi, PRESET_SR_DB).into(),
        se1_link: malaga(t, detection, xi, PRESET_SE_DB).into(),
        rd_link: NakagamiLink::new(m_rd, db_to_linear(rd_db)).unwrap(),
        re2_link: dual.then(|| NakagamiLink::new(2, db_to_linear(10.0)).unwrap()),
        rs: 0.01,
    }
}

/// The 12 parameter sets: Málaga over turbulence × ξ × detection, and
/// Gamma-Gamma over turbulence × detection at ξ = 1.1.
pub fn distribution_grid(snr_db: f64) -> Vec<(String, OpticalLink)> {
    let mut out = Vec::new();
    for t in [Turbulence::Strong, Turbulence::Moderate] {
        for d in [Detection::Heterodyne, Detection::IntensityModulation] {
            for xi in [1.1, 6.7] {
                out.push((format!("malaga {t:?} {d:?} xi={xi}"), malaga(t, d, xi, snr_db).into()));
            }
            out.push((format!("gamma-gamma {t:?} {d:?} xi=1.1"), gamma_gamma(t, d, 1.1, snr_db)));
        }
    }
    out
}
