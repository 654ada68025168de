use serde::{Deserialize, Serialize};

use super::optical::{OpticalModel, OpticalTerm};
use super::{delta, ChannelError, Detection};
use crate::specfun::{binomial, factorial, ln_gamma_abs};

/// One Málaga-faded optical hop with zero-boresight pointing errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MalagaLink {
    pub alpha: f64,
    pub beta: u32,
    pub rho: f64,
    pub b0: f64,
    pub omega: f64,
    /// `φ_A − φ_B` in radians.
    pub phase_diff: f64,
    pub xi: f64,
    pub detection: Detection,
    /// Linear average SNR `γ̄`.
    pub avg_snr: f64,
}

/// Constants of the Málaga SNR distribution.
///
/// `a` holds the normalizing constant of the pdf. The printed constant
/// carries an extra `1/r`; that version is kept in `a_printed` for the
/// as-printed formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct MalagaDerived {
    pub g: f64,
    pub omega_prime: f64,
    pub a: f64,
    pub a_printed: f64,
    pub b: f64,
    pub e: f64,
    pub a_m: Vec<f64>,
    pub b_m: Vec<f64>,
    pub c_m: Vec<f64>,
    pub mu: f64,
    pub k1: Vec<f64>,
    /// One `K2` list per `m = 1..=β`.
    pub k2: Vec<Vec<f64>>,
}

impl MalagaLink {
    pub fn validate(&self) -> Result<(), ChannelError> {
        let bad = |what: &str| Err(ChannelError::InvalidParameter(what.to_string()));
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be positive");
        }
        if self.beta == 0 {
            return bad("beta must be a positive integer");
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return bad("rho must lie in [0, 1]");
        }
        if !(self.b0 > 0.0 && self.b0.is_finite()) {
            return bad("b0 must be positive");
        }
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return bad("omega must be non-negative");
        }
        if !self.phase_diff.is_finite() {
            return bad("phase difference must be finite");
        }
        if !(self.xi > 0.0 && self.xi.is_finite()) {
            return bad("xi must be positive");
        }
        if !(self.avg_snr > 0.0 && self.avg_snr.is_finite()) {
            return bad("average SNR must be positive");
        }
        Ok(())
    }

    pub fn scatter_power(&self) -> f64 {
        2.0 * self.b0 * (1.0 - self.rho)
    }

    pub fn coherent_power(&self) -> f64 {
        let cross = 2.0 * (2.0 * self.b0 * self.rho * self.omega).sqrt() * self.phase_diff.cos();
        (self.omega + 2.0 * self.b0 * self.rho + cross).max(0.0)
    }

    pub fn order(&self) -> u32 {
        self.detection.order()
    }

    /// `E[I]` of the irradiance `X·Y·h` with unit-mean `X`.
    pub fn mean_irradiance(&self) -> f64 {
        let xi2 = self.xi * self.xi;
        (self.scatter_power() + self.coherent_power()) * xi2 / (xi2 + 1.0)
    }

    /// `μ_r`: the SNR scale of the pdf (`γ̄` under heterodyne detection).
    pub fn mu(&self) -> f64 {
        mu_r(
            self.detection,
            self.alpha,
            self.beta as f64,
            self.xi,
            self.scatter_power(),
            self.coherent_power(),
            self.avg_snr,
        )
    }

    pub fn derive(&self) -> Result<MalagaDerived, ChannelError> {
        derive_malaga(self)
    }

    pub fn model(&self) -> Result<OpticalModel, ChannelError> {
        let d = derive_malaga(self)?;
        let r = self.order();
        let xi2 = self.xi * self.xi;
        let terms = d
            .b_m
            .iter()
            .enumerate()
            .map(|(j, &bm)| OpticalTerm {
                weight: d.a * xi2 * bm / 2f64.powi(r as i32),
                shape: (j + 1) as f64,
            })
            .collect();
        Ok(OpticalModel::new(r, xi2, self.alpha, d.b, d.mu, terms))
    }
}

pub(crate) fn mu_r(detection: Detection, alpha: f64, beta: f64, xi: f64, g: f64, op: f64, avg: f64) -> f64 {
    match detection {
        Detection::Heterodyne => avg,
        Detection::IntensityModulation => {
            let xi2 = xi * xi;
            let num = xi2 * (2.0 + xi2) * (g + op) / ((1.0 + xi2) * (1.0 + xi2));
            let den = (1.0 + alpha) / alpha * (2.0 * g * (g + 2.0 * op) + op * op * (1.0 + 1.0 / beta));
            num / den * avg
        }
    }
}

pub fn derive_malaga(link: &MalagaLink) -> Result<MalagaDerived, ChannelError> {
    link.validate()?;
    let (alpha, beta) = (link.alpha, link.beta);
    let bf = beta as f64;
    let g = link.scatter_power();
    let op = link.coherent_power();
    if g == 0.0 && beta > 1 {
        return Err(ChannelError::DegenerateScatter { beta });
    }
    if g == 0.0 && op == 0.0 {
        return Err(ChannelError::InvalidParameter("no received power: g and Ω′ are both zero".into()));
    }
    let r = link.order();
    let rf = r as f64;
    let s = g * bf + op;

    // g^{-(1+α/2)} (gβ)^{β+α/2} folded so that g = 0 is finite when β = 1
    let ln_a = std::f64::consts::LN_2 + 0.5 * alpha * alpha.ln() - ln_gamma_abs(alpha)
        + (bf + 0.5 * alpha) * (bf.ln() - s.ln());
    let a = ln_a.exp() * if beta == 1 { 1.0 } else { g.powi(beta as i32 - 1) };

    let b = link.xi * link.xi * alpha * bf * (g + op) / ((link.xi * link.xi + 1.0) * s);
    let e = b.powi(r as i32) / rf.powi(2 * r as i32);

    let mut a_m = Vec::with_capacity(beta as usize);
    let mut b_m = Vec::with_capacity(beta as usize);
    let mut c_m = Vec::with_capacity(beta as usize);
    for m in 1..=beta {
        let mf = m as f64;
        // (Ω′/g)^{m-1} is finite at g = 0 only when β = 1 (m = 1 only)
        let ratio = if m == 1 { 1.0 } else { (op / g).powi(m as i32 - 1) };
        let am = binomial(beta - 1, m - 1) * s.powf(1.0 - mf / 2.0) / factorial(m - 1)
            * ratio
            * (alpha / bf).powf(mf / 2.0);
        let bm = am * (alpha * bf / s).powf(-(alpha + mf) / 2.0);
        a_m.push(am);
        b_m.push(bm);
        c_m.push(bm * rf.powf(alpha + mf - 1.0));
    }

    let xi2 = link.xi * link.xi;
    let k1 = delta(r, xi2 + 1.0);
    let k2 = (1..=beta)
        .map(|m| [delta(r, xi2), delta(r, alpha), delta(r, m as f64)].concat())
        .collect();

    Ok(MalagaDerived {
        g,
        omega_prime: op,
        a,
        a_printed: a / rf,
        b,
        e,
        a_m,
        b_m,
        c_m,
        mu: link.mu(),
        k1,
        k2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(rho: f64, omega: f64) -> MalagaLink {
        MalagaLink {
            alpha: 2.296,
            beta: 2,
            rho,
            b0: 0.5,
            omega,
            phase_diff: 0.0,
            xi: 1.1,
            detection: Detection::Heterodyne,
            avg_snr: 10.0,
        }
    }

    #[test]
    fn no_coupling_no_los() {
        let l = link(0.0, 0.0);
        assert_eq!(l.coherent_power(), 0.0);
        assert_eq!(l.scatter_power(), 1.0);
    }

    #[test]
    fn heterodyne_scale_is_the_average_snr() {
        let d = derive_malaga(&link(0.9, 1.0)).unwrap();
        assert_eq!(d.mu, 10.0);
        assert_eq!(d.k1.len(), 1);
        assert!(d.k2.iter().all(|k| k.len() == 3));
        assert_eq!(d.a_m.len(), 2);
    }

    #[test]
    fn degenerate_scatter_is_rejected() {
        let mut l = link(1.0, 1.0);
        assert!(matches!(derive_malaga(&l), Err(ChannelError::DegenerateScatter { beta: 2 })));
        l.beta = 1;
        assert!(derive_malaga(&l).is_ok());
    }

    #[test]
    fn bad_parameters() {
        let mut l = link(0.5, 1.0);
        l.rho = 1.5;
        assert!(l.validate().is_err());
        let mut l = link(0.5, 1.0);
        l.avg_snr = 0.0;
        assert!(l.validate().is_err());
    }
}
