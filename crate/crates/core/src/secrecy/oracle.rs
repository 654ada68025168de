use super::{Estimate, Provenance, SecrecyError, SecrecyScenario, Topology};
use crate::channels::{ChannelError, NakagamiLink, OpticalModel};
use crate::quadrature::{integrate_positive_axis, Integral};

const ABS_TOL: f64 = 1e-10;
const REL_TOL: f64 = 1e-9;
const TAIL: f64 = 1e-15;

/// Quadrature values of the bound and, in dual mode, of each hop's outage
/// probability `P(γ_main ≤ Θ γ_eve)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureBreakdown {
    pub sop: Estimate,
    pub sr_hop: Option<f64>,
    pub rd_hop: Option<f64>,
}

/// `∫ F_main(Θγ) f_eve(γ) dγ` over the optical eavesdropper's SNR.
fn optical_eve<F>(se: &OpticalModel, mut outage: F) -> Result<Integral, SecrecyError>
where
    F: FnMut(f64) -> Result<f64, ChannelError>,
{
    let integral = integrate_positive_axis(
        |g: f64| -> Result<f64, ChannelError> { Ok(outage(g)? * se.pdf(g)?) },
        se.mu,
        TAIL,
        ABS_TOL,
        REL_TOL,
    )?;
    Ok(integral)
}

fn rf_eve<F>(re2: &NakagamiLink, mut outage: F) -> Result<Integral, SecrecyError>
where
    F: FnMut(f64) -> Result<f64, ChannelError>,
{
    let integral = integrate_positive_axis(
        |g: f64| -> Result<f64, ChannelError> { Ok(outage(g)? * re2.pdf(g)?) },
        re2.avg_snr,
        TAIL,
        ABS_TOL,
        REL_TOL,
    )?;
    Ok(integral)
}

/// The secrecy outage bound by direct numerical integration of its
/// defining integral(s); independent of every closed form.
pub fn sop_quadrature(s: &SecrecyScenario, topology: Topology) -> Result<QuadratureBreakdown, SecrecyError> {
    s.validate()?;
    let theta = s.theta();
    let sr = s.sr_link.model()?;
    let se = s.se1_link.model()?;
    if topology == Topology::Single {
        let rd = s.rd_link;
        let i = optical_eve(&se, |g| Ok(1.0 - sr.ccdf(theta * g)? * rd.ccdf(theta * g)?))?;
        return Ok(QuadratureBreakdown {
            sop: Estimate::checked(i.value, i.error, Provenance::Quadrature)?,
            sr_hop: None,
            rd_hop: None,
        });
    }
    let re2 = s.require_dual()?;
    let j_sr = optical_eve(&se, |g| sr.cdf(theta * g))?;
    let j_rd = rf_eve(&re2, |g| s.rd_link.cdf(theta * g))?;
    let value = 1.0 - (1.0 - j_sr.value) * (1.0 - j_rd.value);
    let error = j_sr.error + j_rd.error;
    Ok(QuadratureBreakdown {
        sop: Estimate::checked(value, error, Provenance::Quadrature)?,
        sr_hop: Some(j_sr.value),
        rd_hop: Some(j_rd.value),
    })
}
