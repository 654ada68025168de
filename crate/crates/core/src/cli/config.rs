use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use super::CliError;
use crate::channels::{db_to_linear, gamma_gamma_link, Detection, MalagaLink, NakagamiLink, OpticalLink, Turbulence};
use crate::mc::SimConfig;
use crate::secrecy::{SecrecyScenario, Topology};

/// A sweep read from TOML. SNRs are given in dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub scenario: ScenarioSection,
    pub sr_link: OpticalSection,
    /// Missing fields are taken from `sr_link`.
    pub se1_link: OpticalSection,
    pub rd_link: RfSection,
    #[serde(default)]
    pub re2_link: Option<RfSection>,
    pub sweep: SweepSection,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    /// Target secrecy rate, nats/s/Hz.
    pub rs: f64,
    /// Series name appended to the metric column.
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpticalModelKind {
    Malaga,
    GammaGamma,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpticalSection {
    pub model: Option<OpticalModelKind>,
    /// Fills in `alpha` and `beta` when they are absent.
    pub turbulence: Option<Turbulence>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub rho: Option<f64>,
    pub b0: Option<f64>,
    pub omega: Option<f64>,
    pub phase_diff: Option<f64>,
    pub xi: Option<f64>,
    pub detection: Option<Detection>,
    pub avg_snr_db: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RfSection {
    pub m: u32,
    pub avg_snr_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Sr,
    Se1,
    Rd,
    Re2,
    /// `γ̄_SR` and `γ̄_RD` moved together.
    SrRd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub variable: SweepVariable,
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
    pub metrics: Vec<MetricSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub antithetic: bool,
}

fn default_samples() -> u64 {
    1_000_000
}

fn default_seed() -> u64 {
    1
}

impl Default for McSection {
    fn default() -> Self {
        Self { samples: default_samples(), seed: default_seed(), antithetic: false }
    }
}

impl McSection {
    pub fn sim_config(&self) -> SimConfig {
        SimConfig { sample_count: self.samples, seed: self.seed, antithetic: self.antithetic }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Sop,
    Spsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Closed,
    /// The dedicated Gamma-Gamma / Rayleigh closed form.
    Gg,
    Asymptotic,
    Quadrature,
    Mc,
}

/// `<quantity>_<topology>_<method>`, e.g. `sop_single_closed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MetricSpec {
    pub quantity: Quantity,
    pub topology: Topology,
    pub method: Method,
}

impl MetricSpec {
    pub fn name(&self) -> String {
        let q = match self.quantity {
            Quantity::Sop => "sop",
            Quantity::Spsc => "spsc",
        };
        let base = format!("{q}_{}", self.topology.as_str());
        if self.method == Method::Gg {
            base + "_gg"
        } else {
            base
        }
    }
}

impl TryFrom<String> for MetricSpec {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        let parts: Vec<&str> = s.split('_').collect();
        let [q, t, m] = parts.as_slice() else {
            return Err(format!("metric `{s}` is not of the form <sop|spsc>_<single|dual>_<method>"));
        };
        let quantity = match *q {
            "sop" => Quantity::Sop,
            "spsc" => Quantity::Spsc,
            other => return Err(format!("unknown quantity `{other}` in metric `{s}`")),
        };
        let topology = match *t {
            "single" => Topology::Single,
            "dual" => Topology::Dual,
            other => return Err(format!("unknown topology `{other}` in metric `{s}`")),
        };
        let method = match *m {
            "closed" => Method::Closed,
            "gg" => Method::Gg,
            "asymptotic" | "asym" => Method::Asymptotic,
            "quadrature" => Method::Quadrature,
            "mc" => Method::Mc,
            other => return Err(format!("unknown method `{other}` in metric `{s}`")),
        };
        if method == Method::Gg && (quantity, topology) != (Quantity::Sop, Topology::Single) {
            return Err(format!("`gg` is only available for sop_single (metric `{s}`)"));
        }
        Ok(Self { quantity, topology, method })
    }
}

impl From<MetricSpec> for String {
    fn from(m: MetricSpec) -> String {
        let q = match m.quantity {
            Quantity::Sop => "sop",
            Quantity::Spsc => "spsc",
        };
        let method = match m.method {
            Method::Closed => "closed",
            Method::Gg => "gg",
            Method::Asymptotic => "asymptotic",
            Method::Quadrature => "quadrature",
            Method::Mc => "mc",
        };
        format!("{q}_{}_{method}", m.topology.as_str())
    }
}

const DEFAULT_RHO: f64 = 0.95;
const DEFAULT_B0: f64 = 0.25;
const DEFAULT_OMEGA: f64 = 0.5;
const DEFAULT_PHASE: f64 = std::f64::consts::FRAC_PI_2;

impl OpticalSection {
    fn inherit(&self, base: &OpticalSection) -> OpticalSection {
        OpticalSection {
            model: self.model.or(base.model),
            turbulence: self.turbulence.or(base.turbulence),
            alpha: self.alpha.or(if self.turbulence.is_some() { None } else { base.alpha }),
            beta: self.beta.or(if self.turbulence.is_some() { None } else { base.beta }),
            rho: self.rho.or(base.rho),
            b0: self.b0.or(base.b0),
            omega: self.omega.or(base.omega),
            phase_diff: self.phase_diff.or(base.phase_diff),
            xi: self.xi.or(base.xi),
            detection: self.detection.or(base.detection),
            avg_snr_db: self.avg_snr_db.or(base.avg_snr_db),
        }
    }

    fn link(&self, which: &str) -> Result<OpticalLink, CliError> {
        let missing = |field: &str| CliError::Config(format!("[{which}] needs `{field}`"));
        let alpha = self.alpha.or(self.turbulence.map(|t| t.alpha())).ok_or_else(|| missing("alpha or turbulence"))?;
        let beta = self.beta.or(self.turbulence.map(|t| t.beta() as f64)).ok_or_else(|| missing("beta or turbulence"))?;
        let xi = self.xi.ok_or_else(|| missing("xi"))?;
        let detection = self.detection.ok_or_else(|| missing("detection"))?;
        let avg_snr = db_to_linear(self.avg_snr_db.ok_or_else(|| missing("avg_snr_db"))?);
        let link = match self.model.unwrap_or(OpticalModelKind::Malaga) {
            OpticalModelKind::Malaga => {
                if !(beta >= 1.0 && beta.fract() == 0.0 && beta < u32::MAX as f64) {
                    return Err(CliError::Config(format!(
                        "[{which}] Málaga beta must be a positive integer, got {beta}"
                    )));
                }
                OpticalLink::Malaga(MalagaLink {
                    alpha,
                    beta: beta as u32,
                    rho: self.rho.unwrap_or(DEFAULT_RHO),
                    b0: self.b0.unwrap_or(DEFAULT_B0),
                    omega: self.omega.unwrap_or(DEFAULT_OMEGA),
                    phase_diff: self.phase_diff.unwrap_or(DEFAULT_PHASE),
                    xi,
                    detection,
                    avg_snr,
                })
            }
            OpticalModelKind::GammaGamma => OpticalLink::GammaGamma(gamma_gamma_link(alpha, beta, xi, detection, avg_snr)),
        };
        link.validate().map_err(|e| CliError::Config(format!("[{which}] {e}")))?;
        Ok(link)
    }
}

impl RfSection {
    fn link(&self, which: &str) -> Result<NakagamiLink, CliError> {
        NakagamiLink::new(self.m, db_to_linear(self.avg_snr_db)).map_err(|e| CliError::Config(format!("[{which}] {e}")))
    }
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn check(&self) -> Result<(), CliError> {
        let s = &self.sweep;
        if !(s.step_db > 0.0) || !s.step_db.is_finite() {
            return Err(CliError::Config(format!("sweep step must be positive, got {}", s.step_db)));
        }
        if !(s.start_db < s.stop_db) {
            return Err(CliError::Config(format!("empty sweep range [{}, {}]", s.start_db, s.stop_db)));
        }
        if s.metrics.is_empty() {
            return Err(CliError::Config("at least one metric is required".into()));
        }
        let needs_dual = s.metrics.iter().any(|m| m.topology == Topology::Dual) || s.variable == SweepVariable::Re2;
        if needs_dual && self.re2_link.is_none() {
            return Err(CliError::Config("dual-eavesdropper metrics need a [re2_link] section".into()));
        }
        if !(self.scenario.rs >= 0.0 && self.scenario.rs.is_finite()) {
            return Err(CliError::Config("rs must be a non-negative number".into()));
        }
        if self.mc.samples < crate::mc::MIN_SAMPLES && s.metrics.iter().any(|m| m.method == Method::Mc) {
            return Err(CliError::Config(format!("mc.samples must be at least {}", crate::mc::MIN_SAMPLES)));
        }
        let first = self.scenario_at(s.start_db)?;
        if s.metrics.iter().any(|m| m.method == Method::Gg) {
            let gg = matches!(first.sr_link, OpticalLink::GammaGamma(_)) && matches!(first.se1_link, OpticalLink::GammaGamma(_));
            if !gg || first.rd_link.m != 1 {
                return Err(CliError::Config(
                    "`gg` metrics need gamma_gamma optical links and m = 1 on the R-D link".into(),
                ));
            }
        }
        Ok(())
    }

    /// Grid points in dB, `start + k·step ≤ stop`.
    pub fn grid(&self) -> Vec<f64> {
        let s = &self.sweep;
        let n = ((s.stop_db - s.start_db) / s.step_db + 1e-9).floor() as usize;
        (0..=n).map(|k| s.start_db + k as f64 * s.step_db).collect()
    }

    /// The scenario with the sweep variable set to `snr_db`.
    pub fn scenario_at(&self, snr_db: f64) -> Result<SecrecyScenario, CliError> {
        let mut sr = self.sr_link.clone();
        let mut se1 = self.se1_link.inherit(&self.sr_link);
        let mut rd = self.rd_link;
        let mut re2 = self.re2_link;
        match self.sweep.variable {
            SweepVariable::Sr => sr.avg_snr_db = Some(snr_db),
            SweepVariable::Se1 => se1.avg_snr_db = Some(snr_db),
            SweepVariable::Rd => rd.avg_snr_db = snr_db,
            SweepVariable::Re2 => {
                if let Some(l) = re2.as_mut() {
                    l.avg_snr_db = snr_db;
                }
            }
            SweepVariable::SrRd => {
                sr.avg_snr_db = Some(snr_db);
                rd.avg_snr_db = snr_db;
            }
        }
        Ok(SecrecyScenario {
            sr_link: sr.link("sr_link")?,
            se1_link: se1.link("se1_link")?,
            rd_link: rd.link("rd_link")?,
            re2_link: re2.map(|l| l.link("re2_link")).transpose()?,
            rs: self.scenario.rs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
        [scenario]
        rs = 0.01

        [sr_link]
        turbulence = "strong"
        xi = 1.1
        detection = "heterodyne"
        avg_snr_db = 30

        [se1_link]
        avg_snr_db = 10

        [rd_link]
        m = 2
        avg_snr_db = 0

        [sweep]
        variable = "rd"
        start_db = 0
        stop_db = 40
        step_db = 5
        metrics = ["sop_single_closed"]
    "#;

    #[test]
    fn parses_and_inherits() {
        let cfg = SweepConfig::from_toml(BASE).unwrap();
        assert_eq!(cfg.grid().len(), 9);
        let s = cfg.scenario_at(20.0).unwrap();
        assert!((s.rd_link.avg_snr - 100.0).abs() < 1e-9);
        assert_eq!(s.se1_link.xi(), 1.1);
        assert!((s.se1_link.avg_snr() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_ranges_and_metrics() {
        let bad = BASE.replace("stop_db = 40", "stop_db = 0");
        assert!(matches!(SweepConfig::from_toml(&bad), Err(CliError::Config(_))));
        let bad = BASE.replace("sop_single_closed", "sop_triple_closed");
        assert!(matches!(SweepConfig::from_toml(&bad), Err(CliError::Config(_))));
        let bad = BASE.replace("sop_single_closed", "sop_dual_closed");
        assert!(matches!(SweepConfig::from_toml(&bad), Err(CliError::Config(_))));
    }

    #[test]
    fn fractional_malaga_beta_is_rejected() {
        let bad = BASE.replace("turbulence = \"strong\"", "alpha = 2.0\nbeta = 1.5");
        let err = SweepConfig::from_toml(&bad).unwrap_err();
        assert!(err.to_string().contains("integer"), "{err}");
    }

    #[test]
    fn metric_names_round_trip() {
        for name in ["sop_single_closed", "spsc_dual_mc", "sop_single_gg", "sop_dual_asymptotic"] {
            let m = MetricSpec::try_from(name.to_string()).unwrap();
            assert_eq!(String::from(m), name);
        }
    }
}
