use serde::{Deserialize, Serialize};

use super::ChannelError;
use crate::specfun::ln_gamma_abs;

/// Nakagami-m RF hop; the SNR is Gamma distributed with shape `m` and mean `γ̄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NakagamiLink {
    pub m: u32,
    pub avg_snr: f64,
}

impl NakagamiLink {
    pub fn new(m: u32, avg_snr: f64) -> Result<Self, ChannelError> {
        let link = Self { m, avg_snr };
        link.validate()?;
        Ok(link)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if self.m == 0 {
            return Err(ChannelError::InvalidParameter("Nakagami m must be a positive integer".into()));
        }
        if !(self.avg_snr > 0.0 && self.avg_snr.is_finite()) {
            return Err(ChannelError::InvalidParameter("average SNR must be positive".into()));
        }
        Ok(())
    }

    /// `m / γ̄`
    pub fn rate(&self) -> f64 {
        self.m as f64 / self.avg_snr
    }

    pub fn pdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        check(gamma)?;
        if gamma == 0.0 {
            return Ok(if self.m == 1 { self.rate() } else { 0.0 });
        }
        let m = self.m as f64;
        let lam = self.rate();
        Ok((m * lam.ln() + (m - 1.0) * gamma.ln() - lam * gamma - ln_gamma_abs(m)).exp())
    }

    pub fn cdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        check(gamma)?;
        let x = self.rate() * gamma;
        // small arguments: the series of the lower incomplete gamma avoids cancellation
        if x < 1.0 {
            let m = self.m as f64;
            let mut term = (m * x.ln() - x - ln_gamma_abs(m + 1.0)).exp();
            let mut sum = term;
            let mut k = 1.0;
            while term > sum * 1e-17 {
                term *= x / (m + k);
                sum += term;
                k += 1.0;
            }
            return Ok(sum);
        }
        Ok(1.0 - self.ccdf(gamma)?)
    }

    /// `e^{-mγ/γ̄} Σ_{k<m} (mγ/γ̄)^k / k!`
    pub fn ccdf(&self, gamma: f64) -> Result<f64, ChannelError> {
        check(gamma)?;
        if gamma.is_infinite() {
            return Ok(0.0);
        }
        let x = self.rate() * gamma;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..self.m {
            term *= x / k as f64;
            sum += term;
        }
        Ok(sum * (-x).exp())
    }
}

fn check(gamma: f64) -> Result<(), ChannelError> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(ChannelError::Domain(gamma));
    }
    Ok(())
}
