use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::malaga::{mu_r, MalagaLink};
use super::{delta, ChannelError, Detection};
use crate::specfun::{ln_gamma_abs, meijer_g, FoxHSpec, MeijerGSpec, ScaledParam};

/// Gamma-Gamma turbulence with pointing errors (the `g = 0, Ω′ = 1` member
/// of the Málaga family, with real `β`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaGammaLink {
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub detection: Detection,
    pub avg_snr: f64,
}

pub fn gamma_gamma_link(alpha: f64, beta: f64, xi: f64, detection: Detection, avg_snr: f64) -> GammaGammaLink {
    GammaGammaLink { alpha, beta, xi, detection, avg_snr }
}

impl GammaGammaLink {
    pub fn validate(&self) -> Result<(), ChannelError> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("xi", self.xi), ("average SNR", self.avg_snr)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ChannelError::InvalidParameter(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn mu(&self) -> f64 {
        mu_r(self.detection, self.alpha, self.beta, self.xi, 0.0, 1.0, self.avg_snr)
    }

    /// Normalizing constant `ξ²/(r Γ(α) Γ(β))`.
    pub fn a(&self) -> f64 {
        self.xi * self.xi / self.detection.order() as f64
            * (-ln_gamma_abs(self.alpha) - ln_gamma_abs(self.beta)).exp()
    }

    pub fn model(&self) -> Result<OpticalModel, ChannelError> {
        self.validate()?;
        let xi2 = self.xi * self.xi;
        let h = xi2 / (xi2 + 1.0);
        Ok(OpticalModel::new(
            self.detection.order(),
            xi2,
            self.alpha,
            h * self.alpha * self.beta,
            self.mu(),
            vec![OpticalTerm { weight: self.a(), shape: self.beta }],
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum OpticalLink {
    Malaga(MalagaLink),
    GammaGamma(GammaGammaLink),
}

impl From<MalagaLink> for OpticalLink {
    fn from(l: MalagaLink) -> Self {
        OpticalLink::Malaga(l)
    }
}

impl From<GammaGammaLink> for OpticalLink {
    fn from(l: GammaGammaLink) -> Self {
        OpticalLink::GammaGamma(l)
    }
}

impl OpticalLink {
    pub fn model(&self) -> Result<OpticalModel, ChannelError> {
        match self {
            OpticalLink::Malaga(l) => l.model(),
            OpticalLink::GammaGamma(l) => l.model(),
        }
    }

    pub fn avg_snr(&self) -> f64 {
        match self {
            OpticalLink::Malaga(l) => l.avg_snr,
            OpticalLink::GammaGamma(l) => l.avg_snr,
        }
    }

    pub fn with_avg_snr(mut self, avg_snr: f64) -> Self {
        match &mut self {
            OpticalLink::Malaga(l) => l.avg_snr = avg_snr,
            OpticalLink::GammaGamma(l) => l.avg_snr = avg_snr,
        }
        self
    }

    pub fn detection(&self) -> Detection {
        match self {
            OpticalLink::Malaga(l) => l.detection,
            OpticalLink::GammaGamma(l) => l.detection,
        }
    }

    pub fn xi(&self) -> f64 {
        match self {
            OpticalLink::Malaga(l) => l.xi,
            OpticalLink::GammaGamma(l) => l.xi,
        }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            OpticalLink::Malaga(l) => l.alpha,
            OpticalLink::GammaGamma(l) => l.alpha,
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        match self {
            OpticalLink::Malaga(l) => l.validate(),
            OpticalLink::GammaGamma(l) => l.validate(),
        }
    }
}

/// One summand of the SNR density, `weight · γ^{-1} G^{3,0}_{1,3}[B (γ/μ)^{1/r} | ξ²+1; ξ², α, shape]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalTerm {
    pub weight: f64,
    pub shape: f64,
}

/// The SNR law shared by the Málaga and Gamma-Gamma links: a finite mixture
/// of Meijer G densities.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalModel {
    pub r: u32,
    pub xi2: f64,
    pub alpha: f64,
    pub b: f64,
    pub mu: f64,
    pub terms: Vec<OpticalTerm>,
}

impl OpticalModel {
    pub fn new(r: u32, xi2: f64, alpha: f64, b: f64, mu: f64, terms: Vec<OpticalTerm>) -> Self {
        Self { r, xi2, alpha, b, mu, terms }
    }

    /// `B^r / r^{2r}`
    pub fn e(&self) -> f64 {
        self.b.powi(self.r as i32) / (self.r as f64).powi(2 * self.r as i32)
    }

    pub fn k1(&self) -> Vec<f64> {
        delta(self.r, self.xi2 + 1.0)
    }

    pub fn k2(&self, shape: f64) -> Vec<f64> {
        [delta(self.r, self.xi2), delta(self.r, self.alpha), delta(self.r, shape)].concat()
    }

    /// Coefficient of the `G^{3r,·}_{r+1,3r+1}` distribution-function terms,
    /// `weight · r^{α+m−1} / (2π)^{r−1}`.
    pub fn cdf_weight(&self, term: &OpticalTerm) -> f64 {
        let r = self.r as f64;
        term.weight * r.powf(self.alpha + term.shape - 1.0) / (2.0 * PI).powi(self.r as i32 - 1)
    }

    pub fn pdf_spec(&self, term: &OpticalTerm) -> Result<MeijerGSpec, ChannelError> {
        Ok(MeijerGSpec::new(3, 0, vec![self.xi2 + 1.0], vec![self.xi2, self.alpha, term.shape])?)
    }

    /// The density kernel as a Fox H function in `B^r γ/μ`; the pdf term is
    /// `weight · r/γ · H^{3,0}_{1,3}[B^r γ/μ | (ξ²+1, r); (ξ², r), (α, r), (m, r)]`.
    pub fn pdf_fox_spec(&self, term: &OpticalTerm) -> Result<FoxHSpec, ChannelError> {
        let r = self.r as f64;
        Ok(FoxHSpec::new(
            3,
            0,
            vec![ScaledParam::new(self.xi2 + 1.0, r)],
            ScaledParam::repeated(&[self.xi2, self.alpha, term.shape], r),
        )?)
    }

    pub fn cdf_spec(&self, term: &OpticalTerm) -> Result<MeijerGSpec, ChannelError> {
        let r = self.r as usize;
        let a = [vec![1.0], self.k1()].concat();
        let b = [self.k2(term.shape), vec![0.0]].concat();
        Ok(MeijerGSpec::new(3 * r, 1, a, b)?)
    }

    pub fn ccdf_spec(&self, term: &OpticalTerm) -> Result<MeijerGSpec, ChannelError> {
        let r = self.r as usize;
        let a = [self.k1(), vec![1.0]].concat();
        let b = [self.k2(term.shape), vec![0.0]].concat();
        Ok(MeijerGSpec::new(3 * r + 1, 0, a, b)?)
    }

    pub fn pdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(ChannelError::Domain(gamma));
        }
        let z = self.b * (gamma / self.mu).powf(1.0 / self.r as f64);
        let mut total = 0.0;
        for t in &self.terms {
            total += t.weight * meijer_g(&self.pdf_spec(t)?, z)?.value;
        }
        Ok(total / gamma)
    }

    pub fn cdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        self.distribution(gamma, false)
    }

    pub fn ccdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        self.distribution(gamma, true)
    }

    fn distribution(&self, gamma: f64, upper: bool) -> Result<f64, ChannelError> {
        if gamma.is_nan() || gamma < 0.0 {
            return Err(ChannelError::Domain(gamma));
        }
        if gamma == 0.0 || gamma.is_infinite() {
            let at_zero = gamma == 0.0;
            return Ok(if at_zero != upper { 0.0 } else { 1.0 });
        }
        let z = self.e() * gamma / self.mu;
        let mut total = 0.0;
        for t in &self.terms {
            let spec = if upper { self.ccdf_spec(t)? } else { self.cdf_spec(t)? };
            total += self.cdf_weight(t) * meijer_g(&spec, z)?.value;
        }
        Ok(total)
    }
}
