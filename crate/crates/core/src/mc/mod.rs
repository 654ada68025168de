//! Monte Carlo estimates of the secrecy metrics from the generative channel
//! model, independent of every closed form.
//!
//! Irradiance on an optical hop is `I = X·Y·h` with a unit-mean Gamma(α)
//! large-scale factor `X`, a small-scale factor `Y` and a pointing loss
//! `h = U^{1/ξ²}`. For Málaga, `Y = |√(G·Ω′) + Z|²` where `G` is a unit-mean
//! Gamma(β) modulation of the coherent part and `Z` is circular complex
//! Gaussian scatter of power `g`; for Gamma-Gamma, `Y` is a unit-mean
//! Gamma(β). The SNR is `μ_r (I/E[I])^r`.
//!
//! Sample paths are split into fixed-size chunks, each driven by its own
//! ChaCha8 stream derived from `(seed, chunk index)`, and chunk counts are
//! reduced as integers, so results are bit-identical for any thread count.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{ChannelError, GammaGammaLink, MalagaLink, NakagamiLink, OpticalLink};
use crate::secrecy::{SecrecyScenario, Topology};

pub const MIN_SAMPLES: u64 = 10_000;
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("sample count {0} is below the floor of {MIN_SAMPLES}")]
    TooFewSamples(u64),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("invalid scenario: {0}")]
    Scenario(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub sample_count: u64,
    pub seed: u64,
    /// Pair every path with a mirrored one (`U → 1 − U`, `Z → −Z`).
    pub antithetic: bool,
}

impl SimConfig {
    pub fn new(sample_count: u64, seed: u64) -> Self {
        Self { sample_count, seed, antithetic: false }
    }
}

/// A sample mean with its standard error. Under antithetic sampling the
/// standard error is computed over the pair averages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub mean: f64,
    pub std_error: f64,
    pub n: u64,
}

/// Both simulated events: the exact outage `C_s ≤ R_s` and the bound event
/// `γ_main ≤ Θ γ_eve` that the closed forms evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopSimulation {
    pub exact: EstimateWithError,
    pub bound: EstimateWithError,
}

/// Draws SNRs of one optical hop.
#[derive(Debug, Clone)]
pub struct OpticalSampler {
    large: Gamma<f64>,
    small: SmallScale,
    inv_xi2: f64,
    mean_irradiance: f64,
    mu: f64,
    r: i32,
}

#[derive(Debug, Clone)]
enum SmallScale {
    Malaga { modulation: Gamma<f64>, coherent: f64, scatter_sd: f64 },
    GammaGamma(Gamma<f64>),
}

/// Uniform and Gaussian inputs shared by an antithetic pair.
#[derive(Debug, Clone, Copy)]
struct Mirror {
    u: f64,
    z: (f64, f64),
}

fn unit_mean_gamma(shape: f64) -> Result<Gamma<f64>, ChannelError> {
    Gamma::new(shape, 1.0 / shape).map_err(|e| ChannelError::InvalidParameter(e.to_string()))
}

impl OpticalSampler {
    pub fn new(link: &OpticalLink) -> Result<Self, ChannelError> {
        link.validate()?;
        match link {
            OpticalLink::Malaga(l) => Self::malaga(l),
            OpticalLink::GammaGamma(l) => Self::gamma_gamma(l),
        }
    }

    fn malaga(l: &MalagaLink) -> Result<Self, ChannelError> {
        Ok(Self {
            large: unit_mean_gamma(l.alpha)?,
            small: SmallScale::Malaga {
                modulation: unit_mean_gamma(l.beta as f64)?,
                coherent: l.coherent_power(),
                scatter_sd: (l.scatter_power() / 2.0).sqrt(),
            },
            inv_xi2: 1.0 / (l.xi * l.xi),
            mean_irradiance: l.mean_irradiance(),
            mu: l.mu(),
            r: l.order() as i32,
        })
    }

    fn gamma_gamma(l: &GammaGammaLink) -> Result<Self, ChannelError> {
        let xi2 = l.xi * l.xi;
        Ok(Self {
            large: unit_mean_gamma(l.alpha)?,
            small: SmallScale::GammaGamma(unit_mean_gamma(l.beta)?),
            inv_xi2: 1.0 / xi2,
            mean_irradiance: xi2 / (xi2 + 1.0),
            mu: l.mu(),
            r: l.detection.order() as i32,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let m = Mirror { u: rng.gen(), z: (rng.sample(StandardNormal), rng.sample(StandardNormal)) };
        self.sample_from(rng, m)
    }

    fn sample_from<R: Rng + ?Sized>(&self, rng: &mut R, m: Mirror) -> f64 {
        let x = self.large.sample(rng);
        let y = match &self.small {
            SmallScale::Malaga { modulation, coherent, scatter_sd } => {
                let los = (modulation.sample(rng) * coherent).sqrt();
                let re = los + scatter_sd * m.z.0;
                let im = scatter_sd * m.z.1;
                re * re + im * im
            }
            SmallScale::GammaGamma(g) => g.sample(rng),
        };
        let h = m.u.powf(self.inv_xi2);
        self.mu * (x * y * h / self.mean_irradiance).powi(self.r)
    }

    fn pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let m = Mirror { u: rng.gen(), z: (rng.sample(StandardNormal), rng.sample(StandardNormal)) };
        let mirrored = Mirror { u: 1.0 - m.u, z: (-m.z.0, -m.z.1) };
        (self.sample_from(rng, m), self.sample_from(rng, mirrored))
    }
}

pub fn sample_malaga_snr<R: Rng + ?Sized>(link: &MalagaLink, rng: &mut R) -> Result<f64, ChannelError> {
    Ok(OpticalSampler::malaga(link)?.sample(rng))
}

pub fn sample_gamma_gamma_snr<R: Rng + ?Sized>(link: &GammaGammaLink, rng: &mut R) -> Result<f64, ChannelError> {
    Ok(OpticalSampler::gamma_gamma(link)?.sample(rng))
}

pub fn sample_nakagami_snr<R: Rng + ?Sized>(link: &NakagamiLink, rng: &mut R) -> Result<f64, ChannelError> {
    link.validate()?;
    let g = Gamma::new(link.m as f64, link.avg_snr / link.m as f64)
        .map_err(|e| ChannelError::InvalidParameter(e.to_string()))?;
    Ok(g.sample(rng))
}

/// Per-path SNRs of the whole topology.
struct Path {
    sr: f64,
    se1: f64,
    rd: f64,
    re2: f64,
}

struct Samplers {
    sr: OpticalSampler,
    se1: OpticalSampler,
    rd: Gamma<f64>,
    re2: Option<Gamma<f64>>,
}

impl Samplers {
    fn new(s: &SecrecyScenario, topology: Topology) -> Result<Self, McError> {
        s.validate().map_err(|e| McError::Scenario(e.to_string()))?;
        let nakagami = |l: &NakagamiLink| {
            Gamma::new(l.m as f64, l.avg_snr / l.m as f64).map_err(|e| ChannelError::InvalidParameter(e.to_string()))
        };
        let re2 = match topology {
            Topology::Single => None,
            Topology::Dual => {
                let l = s.re2_link.ok_or_else(|| McError::Scenario("dual mode needs an R→E₂ link".into()))?;
                Some(nakagami(&l)?)
            }
        };
        Ok(Self {
            sr: OpticalSampler::new(&s.sr_link)?,
            se1: OpticalSampler::new(&s.se1_link)?,
            rd: nakagami(&s.rd_link)?,
            re2,
        })
    }

    fn rf<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let rd = self.rd.sample(rng);
        let re2 = self.re2.as_ref().map_or(0.0, |g| g.sample(rng));
        (rd, re2)
    }

    fn single<R: Rng + ?Sized>(&self, rng: &mut R) -> Path {
        let sr = self.sr.sample(rng);
        let se1 = self.se1.sample(rng);
        let (rd, re2) = self.rf(rng);
        Path { sr, se1, rd, re2 }
    }

    fn pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (Path, Path) {
        let (sr_a, sr_b) = self.sr.pair(rng);
        let (se_a, se_b) = self.se1.pair(rng);
        let (rd_a, re_a) = self.rf(rng);
        let (rd_b, re_b) = self.rf(rng);
        (
            Path { sr: sr_a, se1: se_a, rd: rd_a, re2: re_a },
            Path { sr: sr_b, se1: se_b, rd: rd_b, re2: re_b },
        )
    }
}

/// Outcome indicators of one path: (exact outage, bound event, positive capacity).
fn events(p: &Path, topology: Topology, theta: f64) -> (bool, bool, bool) {
    match topology {
        Topology::Single => {
            let eq = p.sr.min(p.rd);
            // (1 + γ_eq) ≤ Θ(1 + γ_SE), arranged so that Θ = 1 reduces to γ_eq ≤ γ_SE exactly
            let exact = eq - theta * p.se1 <= theta - 1.0;
            let bound = eq <= theta * p.se1;
            (exact, bound, eq > p.se1)
        }
        Topology::Dual => {
            let exact = p.sr - theta * p.se1 <= theta - 1.0 || p.rd - theta * p.re2 <= theta - 1.0;
            let bound = p.sr <= theta * p.se1 || p.rd <= theta * p.re2;
            (exact, bound, p.sr > p.se1 && p.rd > p.re2)
        }
    }
}

/// Integer sums of unit values (`0..=w` per unit) and their squares.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    sum: [u64; 3],
    sq: [u64; 3],
}

impl Tally {
    fn add(&mut self, hits: [u64; 3]) {
        for (j, h) in hits.into_iter().enumerate() {
            self.sum[j] += h;
            self.sq[j] += h * h;
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for j in 0..3 {
            self.sum[j] += other.sum[j];
            self.sq[j] += other.sq[j];
        }
        self
    }
}

fn simulate(s: &SecrecyScenario, cfg: &SimConfig, topology: Topology) -> Result<[EstimateWithError; 3], McError> {
    if cfg.sample_count < MIN_SAMPLES {
        return Err(McError::TooFewSamples(cfg.sample_count));
    }
    let samplers = Samplers::new(s, topology)?;
    let theta = s.theta();
    let width: u64 = if cfg.antithetic { 2 } else { 1 };
    let units = cfg.sample_count / width;
    let chunks = units.div_ceil(CHUNK);

    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c);
            let count = CHUNK.min(units - c * CHUNK);
            let mut t = Tally::default();
            let to_hits = |e: (bool, bool, bool)| [e.0 as u64, e.1 as u64, e.2 as u64];
            for _ in 0..count {
                if cfg.antithetic {
                    let (a, b) = samplers.pair(&mut rng);
                    let (ha, hb) = (to_hits(events(&a, topology, theta)), to_hits(events(&b, topology, theta)));
                    t.add([ha[0] + hb[0], ha[1] + hb[1], ha[2] + hb[2]]);
                } else {
                    t.add(to_hits(events(&samplers.single(&mut rng), topology, theta)));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let n = units as f64;
    let w = width as f64;
    let out = std::array::from_fn(|j| {
        let mean_unit = tally.sum[j] as f64 / n;
        let var_unit = (tally.sq[j] as f64 / n - mean_unit * mean_unit).max(0.0) * n / (n - 1.0);
        EstimateWithError { mean: mean_unit / w, std_error: (var_unit / n).sqrt() / w, n: units * width }
    });
    Ok(out)
}

/// Empirical outage probabilities of the exact event and of the bound event.
pub fn estimate_sop(s: &SecrecyScenario, cfg: &SimConfig, topology: Topology) -> Result<SopSimulation, McError> {
    let [exact, bound, _] = simulate(s, cfg, topology)?;
    Ok(SopSimulation { exact, bound })
}

/// Empirical `P(C_s > 0)`; on the same seed it is exactly the complement of
/// the outage estimate at `R_s = 0`.
pub fn estimate_spsc(s: &SecrecyScenario, cfg: &SimConfig, topology: Topology) -> Result<EstimateWithError, McError> {
    let [_, _, positive] = simulate(s, cfg, topology)?;
    Ok(positive)
}
