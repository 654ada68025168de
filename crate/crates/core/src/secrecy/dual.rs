use super::single::{same_order, weight_scale};
use super::{Estimate, FormulaMode, FormulaVariant, SecrecyError, SecrecyScenario};
use crate::channels::{NakagamiLink, OpticalModel, OpticalTerm};
use crate::specfun::{ln_gamma_abs, meijer_g, MeijerGSpec};

/// `Λ = P(γ_RD > Θ γ_RE2)` for Nakagami hops with integer `m_RD`.
pub fn lambda(rd: &NakagamiLink, re2: &NakagamiLink, theta: f64, from_one: bool) -> f64 {
    let c = rd.rate() * theta;
    let lam = re2.rate();
    let me = re2.m as f64;
    let start = if from_one { 1 } else { 0 };
    (start..rd.m)
        .map(|k| {
            let kf = k as f64;
            let ln = kf * c.ln() + me * lam.ln() + ln_gamma_abs(me + kf)
                - ln_gamma_abs(me)
                - ln_gamma_abs(kf + 1.0)
                - (me + kf) * (c + lam).ln();
            ln.exp()
        })
        .sum()
}

/// `G^{3r+1,3r}_{4r+1,4r+1}` kernel of `P(γ_SR ≤ Θ γ_SE1)` for one pair of mixture terms.
pub(super) fn hop_spec(sr: &OpticalModel, t1: &OpticalTerm, se: &OpticalModel, t2: &OpticalTerm) -> Result<MeijerGSpec, SecrecyError> {
    let r = sr.r as usize;
    let a = [
        sr.k2(t1.shape).iter().map(|v| 1.0 - v).collect::<Vec<_>>(),
        vec![1.0],
        se.k1(),
    ]
    .concat();
    let b = [se.k2(t2.shape), vec![0.0], sr.k1().iter().map(|v| 1.0 - v).collect()].concat();
    Ok(MeijerGSpec::new(3 * r + 1, 3 * r, a, b)?)
}

/// Argument `1/Z′` of the hop kernel.
pub(super) fn hop_argument(sr: &OpticalModel, se: &OpticalModel, theta: f64) -> f64 {
    (sr.mu / sr.e()) * (se.e() / se.mu) / theta
}

/// `(Aξ²/(2^r (2π)^{r−1}))²` of the S→R hop, as typeset.
fn typeset_square(s: &SecrecyScenario, v: &FormulaVariant) -> Result<f64, SecrecyError> {
    let sr = s.sr_link.model()?;
    let first = sr.terms.first().map(|t| t.weight).unwrap_or(0.0);
    // every mixture weight carries the common factor Aξ²/2^r; recover it
    let factor = match &s.sr_link {
        crate::channels::OpticalLink::Malaga(l) => {
            let d = l.derive()?;
            d.a * l.xi * l.xi / 2f64.powi(sr.r as i32)
        }
        crate::channels::OpticalLink::GammaGamma(_) => first,
    } * weight_scale(&s.sr_link, v)
        / (2.0 * std::f64::consts::PI).powi(sr.r as i32 - 1);
    Ok(factor * factor)
}

/// `P(γ_SR ≤ Θ γ_SE1)` in closed form, with its accumulated error estimate.
pub fn sop_sr_hop(s: &SecrecyScenario, theta: f64, v: &FormulaVariant) -> Result<(f64, f64), SecrecyError> {
    s.validate()?;
    let sr = s.sr_link.model()?;
    let se = s.se1_link.model()?;
    same_order(&sr, &se)?;
    let z = hop_argument(&sr, &se, theta);
    let mut scale = weight_scale(&s.sr_link, v) * weight_scale(&s.se1_link, v);
    if v.double_mixture_factor {
        scale *= typeset_square(s, v)?;
    }
    let mut sum = 0.0;
    let mut err = 0.0;
    for t1 in &sr.terms {
        for t2 in &se.terms {
            let g = meijer_g(&hop_spec(&sr, t1, &se, t2)?, z)?;
            let coef = scale * sr.cdf_weight(t1) * se.cdf_weight(t2);
            sum += coef * g.value;
            err += (coef * g.error).abs();
        }
    }
    Ok((sum, err))
}

pub fn sop_dual(s: &SecrecyScenario, mode: FormulaMode) -> Result<Estimate, SecrecyError> {
    sop_dual_with(s, &mode.variant())
}

pub fn sop_dual_with(s: &SecrecyScenario, v: &FormulaVariant) -> Result<Estimate, SecrecyError> {
    let re2 = s.require_dual()?;
    let theta = s.theta();
    let (j, err) = sop_sr_hop(s, theta, v)?;
    let lam = lambda(&s.rd_link, &re2, theta, v.lambda_from_one);
    Estimate::checked(1.0 - (1.0 - j) * lam, err * lam, v.provenance())
}

pub fn spsc_dual(s: &SecrecyScenario, mode: FormulaMode) -> Result<Estimate, SecrecyError> {
    spsc_dual_with(s, &mode.variant())
}

pub fn spsc_dual_with(s: &SecrecyScenario, v: &FormulaVariant) -> Result<Estimate, SecrecyError> {
    let re2 = s.require_dual()?;
    let (j, err) = sop_sr_hop(s, 1.0, v)?;
    let lam = lambda(&s.rd_link, &re2, 1.0, v.lambda_from_one);
    // written as 1 − (1 − (1 − J)Λ) so the value is bit-identical to the complement of the SOP at Θ = 1
    let sop = 1.0 - (1.0 - j) * lam;
    Estimate::checked(1.0 - sop, err * lam, v.provenance())
}
