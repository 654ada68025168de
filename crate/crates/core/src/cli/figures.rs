//! Named sweep presets for Figs. 2–7.
//!
//! The source gives α, β, ξ, r, m_RD and R_s for each figure but not the
//! fixed optical SNRs or the Málaga scatter parameters. The values below
//! (γ̄_SR = 30 dB, γ̄_SE1 = −10 dB, γ̄_RE2 = 10 dB, m_RE2 = 2, ρ = 0.95,
//! b₀ = 0.25, Ω = 0.5, φ_A − φ_B = π/2) are guesses, not authoritative.
//!
//! γ̄_SE1 sits well below the start of the γ̄_RD axis. With γ̄_SE1 at or
//! above about −8 dB the single-eavesdropper SOP at small γ̄_RD is governed
//! by the lower tail of the eavesdropper SNR, and heterodyne detection,
//! larger ξ and weaker turbulence stop lowering the SOP at those points.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::config::{
    McSection, MetricSpec, OpticalModelKind, OpticalSection, RfSection, ScenarioSection, SweepConfig, SweepSection,
    SweepVariable,
};
use crate::channels::{Detection, Turbulence};

pub const PRESET_SR_DB: f64 = 30.0;
pub const PRESET_SE_DB: f64 = -10.0;
pub const PRESET_RE2_DB: f64 = 10.0;
pub const PRESET_RS: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl Figure {
    pub const ALL: [Figure; 6] = [Figure::Fig2, Figure::Fig3, Figure::Fig4, Figure::Fig5, Figure::Fig6, Figure::Fig7];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Figure::Fig2 => "single-eavesdropper SOP vs γ̄_RD, Málaga, m_RD = 2",
            Figure::Fig3 => "single-eavesdropper SOP vs γ̄_RD, Gamma-Gamma, m_RD = 1, ξ = 1.1",
            Figure::Fig4 => "single-eavesdropper SPSC vs γ̄_RD, Málaga, m_RD = 2",
            Figure::Fig5 => "single-eavesdropper SPSC vs γ̄_RD, Gamma-Gamma, m_RD = 1, ξ = 1.1",
            Figure::Fig6 => "two-eavesdropper SOP vs γ̄_RD, IM/DD, m_RD = 2",
            Figure::Fig7 => "two-eavesdropper SOP vs γ̄_RD, heterodyne, m_RD = 2",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (expected fig2..fig7)"))
    }
}

fn turbulence_name(t: Turbulence) -> &'static str {
    match t {
        Turbulence::Strong => "strong",
        Turbulence::Moderate => "moderate",
    }
}

fn detection_name(d: Detection) -> &'static str {
    match d {
        Detection::Heterodyne => "hd",
        Detection::IntensityModulation => "imdd",
    }
}

struct Series {
    model: OpticalModelKind,
    turbulence: Turbulence,
    detection: Detection,
    xi: f64,
    m_rd: u32,
    dual: bool,
}

impl Series {
    fn config(&self, metrics: &[&str], mc: McSection) -> SweepConfig {
        let label = format!(
            "{}_{}_xi{}",
            turbulence_name(self.turbulence),
            detection_name(self.detection),
            self.xi
        );
        SweepConfig {
            scenario: ScenarioSection { rs: PRESET_RS, label: Some(label) },
            sr_link: OpticalSection {
                model: Some(self.model),
                turbulence: Some(self.turbulence),
                xi: Some(self.xi),
                detection: Some(self.detection),
                avg_snr_db: Some(PRESET_SR_DB),
                ..Default::default()
            },
            se1_link: OpticalSection { avg_snr_db: Some(PRESET_SE_DB), ..Default::default() },
            rd_link: RfSection { m: self.m_rd, avg_snr_db: 0.0 },
            re2_link: self.dual.then_some(RfSection { m: 2, avg_snr_db: PRESET_RE2_DB }),
            sweep: SweepSection {
                variable: SweepVariable::Rd,
                start_db: 0.0,
                stop_db: 40.0,
                step_db: 5.0,
                metrics: metrics
                    .iter()
                    .map(|m| MetricSpec::try_from(m.to_string()).expect("preset metric names are valid"))
                    .collect(),
            },
            mc,
            output: None,
        }
    }
}

const TURBULENCE: [Turbulence; 2] = [Turbulence::Strong, Turbulence::Moderate];
const DETECTION: [Detection; 2] = [Detection::Heterodyne, Detection::IntensityModulation];
const XI: [f64; 2] = [1.1, 6.7];

/// One sweep per plotted curve family.
pub fn figure_series(fig: Figure, mc: McSection) -> Vec<SweepConfig> {
    let mut out = Vec::new();
    let malaga = |turbulence, detection, xi, dual| Series {
        model: OpticalModelKind::Malaga,
        turbulence,
        detection,
        xi,
        m_rd: 2,
        dual,
    };
    let gg = |turbulence, detection| Series {
        model: OpticalModelKind::GammaGamma,
        turbulence,
        detection,
        xi: 1.1,
        m_rd: 1,
        dual: false,
    };
    match fig {
        Figure::Fig2 | Figure::Fig4 => {
            let metrics: &[&str] = if fig == Figure::Fig2 {
                &["sop_single_closed", "sop_single_asymptotic", "sop_single_mc"]
            } else {
                &["spsc_single_closed", "spsc_single_asymptotic", "spsc_single_mc"]
            };
            for t in TURBULENCE {
                for d in DETECTION {
                    for xi in XI {
                        out.push(malaga(t, d, xi, false).config(metrics, mc));
                    }
                }
            }
        }
        Figure::Fig3 | Figure::Fig5 => {
            let metrics: &[&str] = if fig == Figure::Fig3 {
                &["sop_single_closed", "sop_single_gg", "sop_single_asymptotic", "sop_single_mc"]
            } else {
                &["spsc_single_closed", "spsc_single_asymptotic", "spsc_single_mc"]
            };
            for t in TURBULENCE {
                for d in DETECTION {
                    out.push(gg(t, d).config(metrics, mc));
                }
            }
        }
        Figure::Fig6 | Figure::Fig7 => {
            let d = if fig == Figure::Fig6 { Detection::IntensityModulation } else { Detection::Heterodyne };
            for t in TURBULENCE {
                for xi in XI {
                    out.push(malaga(t, d, xi, true).config(&["sop_dual_closed", "sop_dual_asymptotic", "sop_dual_mc"], mc));
                }
            }
        }
    }
    out
}
