//! Secrecy outage probability (lower bound) and probability of strictly
//! positive secrecy capacity for the decode-and-forward FSO/RF link.
//!
//! Two topologies are covered: a single optical eavesdropper on the S→R hop,
//! and an additional RF eavesdropper on the R→D hop. Each metric comes in a
//! closed form (bivariate Fox H or Meijer G), a high-SNR asymptotic form and
//! a direct quadrature of its defining integral.
//!
//! The closed forms can be evaluated exactly as typeset in the source
//! derivation or with the corrections confirmed against quadrature; see
//! [`FormulaVariant`].

mod asymptotic;
mod dual;
mod oracle;
mod single;

pub use asymptotic::{sop_dual_asym, sop_single_asym, spsc_dual_asym, spsc_single_asym};
pub use dual::{lambda, sop_dual, sop_dual_with, sop_sr_hop, spsc_dual, spsc_dual_with};
pub use oracle::{sop_quadrature, QuadratureBreakdown};
pub use single::{e2e_cdf, e2e_cdf_expanded, sop_single, sop_single_gg, sop_single_with, spsc_single, spsc_single_with};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{ChannelError, NakagamiLink, OpticalLink};
use crate::specfun::SpecFunError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SecrecyError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("result {value} lies outside [0, 1] (error bound {error_bound:e})")]
    OutOfRange { value: f64, error_bound: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

impl From<crate::quadrature::QuadratureError> for SecrecyError {
    fn from(e: crate::quadrature::QuadratureError) -> Self {
        SecrecyError::Quadrature(e.to_string())
    }
}

/// Source → relay → destination with an optical eavesdropper E₁ on the first
/// hop and, optionally, an RF eavesdropper E₂ on the second.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecrecyScenario {
    pub sr_link: OpticalLink,
    pub se1_link: OpticalLink,
    pub rd_link: NakagamiLink,
    pub re2_link: Option<NakagamiLink>,
    /// Target secrecy rate in nats/s/Hz.
    pub rs: f64,
}

impl SecrecyScenario {
    /// `Θ = e^{R_s}`
    pub fn theta(&self) -> f64 {
        self.rs.exp()
    }

    pub fn is_dual(&self) -> bool {
        self.re2_link.is_some()
    }

    pub fn with_rs(mut self, rs: f64) -> Self {
        self.rs = rs;
        self
    }

    pub fn validate(&self) -> Result<(), SecrecyError> {
        self.sr_link.validate()?;
        self.se1_link.validate()?;
        self.rd_link.validate()?;
        if let Some(l) = &self.re2_link {
            l.validate()?;
        }
        if !(self.rs >= 0.0 && self.rs.is_finite()) {
            return Err(SecrecyError::Scenario(format!("target secrecy rate must be non-negative, got {}", self.rs)));
        }
        Ok(())
    }

    pub(crate) fn require_dual(&self) -> Result<NakagamiLink, SecrecyError> {
        self.re2_link
            .ok_or_else(|| SecrecyError::Scenario("dual-eavesdropper metric needs an R→E₂ link".into()))
    }
}

/// Which eavesdroppers are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    /// Optical eavesdropper on the S→R hop only.
    Single,
    /// Optical eavesdropper on S→R and RF eavesdropper on R→D.
    Dual,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Single => "single",
            Topology::Dual => "dual",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedFormAsPrinted,
    ClosedFormValidated,
    Quadrature,
    Asymptotic,
    MonteCarlo,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedFormAsPrinted => "closed_form_as_printed",
            Provenance::ClosedFormValidated => "closed_form_validated",
            Provenance::Quadrature => "quadrature",
            Provenance::Asymptotic => "asymptotic",
            Provenance::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
    pub provenance: Provenance,
}

impl Estimate {
    /// Rejects values outside `[0, 1]` by more than the error bound; nothing
    /// is clamped.
    pub(crate) fn checked(value: f64, error_bound: f64, provenance: Provenance) -> Result<Self, SecrecyError> {
        let slack = error_bound + 1e-12;
        if !value.is_finite() || value < -slack || value > 1.0 + slack {
            return Err(SecrecyError::OutOfRange { value, error_bound });
        }
        Ok(Self { value, error_bound, provenance })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaMode {
    #[serde(alias = "printed")]
    AsPrinted,
    Validated,
}

impl FormulaMode {
    pub fn variant(self) -> FormulaVariant {
        match self {
            FormulaMode::AsPrinted => FormulaVariant::AS_PRINTED,
            FormulaMode::Validated => FormulaVariant::VALIDATED,
        }
    }
}

/// Independent switches for each typeset factor that differs from the
/// corrected closed form. `true` keeps the typeset version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FormulaVariant {
    /// `(m_RD − 1)/Γ(m_RD)` in front of the Nakagami CCDF expansion.
    pub nakagami_prefactor: bool,
    /// `υ₁ = B^r/(μ m_RD r^{2r})`, `υ₂ = B^r γ̄_RD/(μ γ̄_SE m_SE Θ)`.
    pub upsilon_arguments: bool,
    /// `(m_RD Θ/γ̄_RD)^{k'}` outside the H function with the joint block
    /// left at `(1; 1, 1)` for every `k'`.
    pub unshifted_joint_block: bool,
    /// Málaga normalizing constant with the extra `1/r`.
    pub constant_over_r: bool,
    /// `Λ` summed from `k = 1`.
    pub lambda_from_one: bool,
    /// `(Aξ²/(2^r (2π)^{r−1}))²` applied both outside and inside `ϖ`.
    pub double_mixture_factor: bool,
}

impl FormulaVariant {
    pub const VALIDATED: Self = Self {
        nakagami_prefactor: false,
        upsilon_arguments: false,
        unshifted_joint_block: false,
        constant_over_r: false,
        lambda_from_one: false,
        double_mixture_factor: false,
    };

    pub const AS_PRINTED: Self = Self {
        nakagami_prefactor: true,
        upsilon_arguments: true,
        unshifted_joint_block: true,
        constant_over_r: true,
        lambda_from_one: true,
        double_mixture_factor: true,
    };

    pub fn is_validated(&self) -> bool {
        *self == Self::VALIDATED
    }

    pub fn provenance(&self) -> Provenance {
        if self.is_validated() {
            Provenance::ClosedFormValidated
        } else {
            Provenance::ClosedFormAsPrinted
        }
    }

    /// One entry per switch, each with only that switch turned on.
    pub fn single_flips() -> Vec<(&'static str, Self)> {
        let v = Self::VALIDATED;
        vec![
            ("nakagami_prefactor", Self { nakagami_prefactor: true, ..v }),
            ("upsilon_arguments", Self { upsilon_arguments: true, ..v }),
            ("unshifted_joint_block", Self { unshifted_joint_block: true, ..v }),
            ("constant_over_r", Self { constant_over_r: true, ..v }),
            ("lambda_from_one", Self { lambda_from_one: true, ..v }),
            ("double_mixture_factor", Self { double_mixture_factor: true, ..v }),
        ]
    }
}
