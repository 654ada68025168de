//! SNR distributions of the optical (Málaga / Gamma-Gamma with pointing
//! errors) and RF (Nakagami-m) hops.

mod malaga;
mod nakagami;
mod optical;

pub use malaga::{derive_malaga, MalagaDerived, MalagaLink};
pub use nakagami::NakagamiLink;
pub use optical::{gamma_gamma_link, GammaGammaLink, OpticalLink, OpticalModel, OpticalTerm};

use thiserror::Error;

use crate::specfun::SpecFunError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("invalid link parameter: {0}")]
    InvalidParameter(String),
    #[error("scatter power g is zero with beta = {beta}; use the Gamma-Gamma parameterization")]
    DegenerateScatter { beta: u32 },
    #[error("SNR argument out of domain: {0}")]
    Domain(f64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Optical detection scheme at the photodetector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detection {
    /// Heterodyne detection, `r = 1`.
    #[serde(alias = "hd")]
    Heterodyne,
    /// Intensity modulation with direct detection, `r = 2`.
    #[serde(rename = "imdd", alias = "intensitymodulation", alias = "im/dd")]
    IntensityModulation,
}

impl Detection {
    pub fn order(self) -> u32 {
        match self {
            Detection::Heterodyne => 1,
            Detection::IntensityModulation => 2,
        }
    }
}

/// Turbulence regimes used throughout the numerical study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turbulence {
    /// `α = 2.296, β = 2`
    Strong,
    /// `α = 4.2, β = 3`
    Moderate,
}

impl Turbulence {
    pub fn alpha(self) -> f64 {
        match self {
            Turbulence::Strong => 2.296,
            Turbulence::Moderate => 4.2,
        }
    }

    pub fn beta(self) -> u32 {
        match self {
            Turbulence::Strong => 2,
            Turbulence::Moderate => 3,
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// `Δ(k, y) = y/k, (y+1)/k, ..., (y+k-1)/k`.
pub fn delta(k: u32, y: f64) -> Vec<f64> {
    (0..k).map(|j| (y + j as f64) / k as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_lists() {
        assert_eq!(delta(1, 2.5), vec![2.5]);
        assert_eq!(delta(2, 3.0), vec![1.5, 2.0]);
    }

    #[test]
    fn decibels() {
        assert!((db_to_linear(30.0) - 1000.0).abs() < 1e-9);
        assert!((linear_to_db(db_to_linear(-7.3)) + 7.3).abs() < 1e-12);
    }
}
