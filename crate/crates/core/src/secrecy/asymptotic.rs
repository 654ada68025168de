use super::dual::{hop_argument, hop_spec, lambda};
use super::single::same_order;
use super::{Estimate, Provenance, SecrecyError, SecrecyScenario};
use crate::specfun::meijer_g_large_argument;

/// Leading high-SNR behaviour of `P(γ_SR ≤ Θ γ_SE1)`: the first residue of
/// every upper pole family of the hop kernel.
fn hop_leading(s: &SecrecyScenario, theta: f64) -> Result<f64, SecrecyError> {
    s.validate()?;
    let sr = s.sr_link.model()?;
    let se = s.se1_link.model()?;
    same_order(&sr, &se)?;
    let z = hop_argument(&sr, &se, theta);
    let mut total = 0.0;
    for t1 in &sr.terms {
        for t2 in &se.terms {
            let spec = hop_spec(&sr, t1, &se, t2)?;
            total += sr.cdf_weight(t1) * se.cdf_weight(t2) * meijer_g_large_argument(&spec, z)?;
        }
    }
    Ok(total)
}

fn asymptotic(value: f64) -> Estimate {
    // no error model: the truncation error is the next order of the expansion
    Estimate { value, error_bound: f64::NAN, provenance: Provenance::Asymptotic }
}

/// As `γ̄_SR` (and `γ̄_RD`) grow, the outage is dominated by the optical hop.
pub fn sop_single_asym(s: &SecrecyScenario) -> Result<Estimate, SecrecyError> {
    Ok(asymptotic(hop_leading(s, s.theta())?))
}

pub fn spsc_single_asym(s: &SecrecyScenario) -> Result<Estimate, SecrecyError> {
    Ok(asymptotic(1.0 - hop_leading(s, 1.0)?))
}

pub fn sop_dual_asym(s: &SecrecyScenario) -> Result<Estimate, SecrecyError> {
    let re2 = s.require_dual()?;
    let theta = s.theta();
    let j = hop_leading(s, theta)?;
    Ok(asymptotic(1.0 - (1.0 - j) * lambda(&s.rd_link, &re2, theta, false)))
}

pub fn spsc_dual_asym(s: &SecrecyScenario) -> Result<Estimate, SecrecyError> {
    let re2 = s.require_dual()?;
    let j = hop_leading(s, 1.0)?;
    Ok(asymptotic((1.0 - j) * lambda(&s.rd_link, &re2, 1.0, false)))
}
