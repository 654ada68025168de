use super::{Estimate, FormulaVariant, FormulaMode, Provenance, SecrecyError, SecrecyScenario};
use crate::channels::{OpticalLink, OpticalModel};
use crate::specfun::{
    factorial, fox_h_bivariate, gamma, ln_gamma_abs, FoxHBivarSpec, FoxHSpec, JointParam, ScaledParam,
};

/// `F_eq(γ) = 1 − P(γ_SR > γ) P(γ_RD > γ)` for the decode-and-forward hop minimum.
pub fn e2e_cdf(s: &SecrecyScenario, gamma: f64) -> Result<f64, SecrecyError> {
    let sr = s.sr_link.model()?;
    Ok(1.0 - sr.ccdf(gamma)? * s.rd_link.ccdf(gamma)?)
}

/// The same CDF with the Nakagami CCDF expanded term by term against the
/// optical `G^{3r+1,0}` CCDF.
pub fn e2e_cdf_expanded(s: &SecrecyScenario, gamma: f64) -> Result<f64, SecrecyError> {
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let sr = s.sr_link.model()?;
    let x = s.rd_link.rate() * gamma;
    let z = sr.e() * gamma / sr.mu;
    let mut optical = 0.0;
    for t in &sr.terms {
        optical += sr.cdf_weight(t) * crate::specfun::meijer_g(&sr.ccdf_spec(t)?, z)?.value;
    }
    let mut rf = 0.0;
    for k in 0..s.rd_link.m {
        rf += x.powi(k as i32) / factorial(k);
    }
    Ok(1.0 - (-x).exp() * rf * optical)
}

/// Multiplier applied to a link's mixture weights when the typeset
/// normalizing constant (with its extra `1/r`) is requested.
pub(super) fn weight_scale(link: &OpticalLink, v: &FormulaVariant) -> f64 {
    match link {
        OpticalLink::Malaga(l) if v.constant_over_r => 1.0 / l.order() as f64,
        _ => 1.0,
    }
}

/// `Σ_k Σ_{m1,m2}` part of the single-eavesdropper bound, so that
/// `SOP = 1 − S(Θ)` and `SPSC = S(1)`.
fn mixture_sum(s: &SecrecyScenario, theta: f64, v: &FormulaVariant) -> Result<(f64, f64), SecrecyError> {
    s.validate()?;
    let sr = s.sr_link.model()?;
    let se = s.se1_link.model()?;
    let m_rd = s.rd_link.m;
    let mf = m_rd as f64;
    let g_rd = s.rd_link.avg_snr;
    let b_se_r = se.b.powi(se.r as i32);

    let (x, y) = if v.upsilon_arguments {
        // the second hop's shape stands in for the undefined m_SE
        let g_se = s.se1_link.avg_snr();
        (sr.e() / (sr.mu * mf), b_se_r * g_rd / (se.mu * g_se * mf * theta))
    } else {
        (sr.e() * g_rd / (sr.mu * mf), b_se_r * g_rd / (se.mu * mf * theta))
    };
    let prefactor = if v.nakagami_prefactor { (mf - 1.0) / gamma(mf) } else { 1.0 };
    let scale = weight_scale(&s.sr_link, v) * weight_scale(&s.se1_link, v);

    let mut sum = 0.0;
    let mut err = 0.0;
    for k in 0..m_rd {
        let (k_factor, joint) = if v.unshifted_joint_block {
            ((mf * theta / g_rd).powi(k as i32) / factorial(k), 1.0)
        } else {
            (1.0 / factorial(k), 1.0 - k as f64)
        };
        for t1 in &sr.terms {
            let first = sr.ccdf_spec(t1)?.to_fox_h();
            for t2 in &se.terms {
                let spec = FoxHBivarSpec::new(
                    1,
                    vec![JointParam::new(joint, 1.0, 1.0)],
                    vec![],
                    first.clone(),
                    se.pdf_fox_spec(t2)?,
                )?;
                let h = fox_h_bivariate(&spec, x, y)?;
                let coef = prefactor * k_factor * scale * sr.cdf_weight(t1) * t2.weight * se.r as f64;
                sum += coef * h.value;
                err += (coef * h.error).abs();
            }
        }
    }
    Ok((sum, err))
}

pub fn sop_single(s: &SecrecyScenario, mode: FormulaMode) -> Result<Estimate, SecrecyError> {
    sop_single_with(s, &mode.variant())
}

pub fn sop_single_with(s: &SecrecyScenario, v: &FormulaVariant) -> Result<Estimate, SecrecyError> {
    let (sum, err) = mixture_sum(s, s.theta(), v)?;
    Estimate::checked(1.0 - sum, err, v.provenance())
}

pub fn spsc_single(s: &SecrecyScenario, mode: FormulaMode) -> Result<Estimate, SecrecyError> {
    spsc_single_with(s, &mode.variant())
}

pub fn spsc_single_with(s: &SecrecyScenario, v: &FormulaVariant) -> Result<Estimate, SecrecyError> {
    let (sum, err) = mixture_sum(s, 1.0, v)?;
    Estimate::checked(sum, err, v.provenance())
}

/// Gamma-Gamma optical hops with a Rayleigh (`m_RD = 1`) RF hop, built from
/// the Gamma-Gamma constants directly rather than through the Málaga mixture.
pub fn sop_single_gg(s: &SecrecyScenario) -> Result<Estimate, SecrecyError> {
    s.validate()?;
    let (OpticalLink::GammaGamma(sr), OpticalLink::GammaGamma(se)) = (s.sr_link, s.se1_link) else {
        return Err(SecrecyError::Scenario("both optical hops must use the Gamma-Gamma parameterization".into()));
    };
    if s.rd_link.m != 1 {
        return Err(SecrecyError::Scenario(format!("Rayleigh RF hop required (m_RD = 1), got m_RD = {}", s.rd_link.m)));
    }
    let r1 = sr.detection.order();
    let r2 = se.detection.order();
    let (r1f, r2f) = (r1 as f64, r2 as f64);
    let constant = |xi: f64, alpha: f64, beta: f64, r: f64| {
        xi * xi / r * (-ln_gamma_abs(alpha) - ln_gamma_abs(beta)).exp()
    };
    let a1 = constant(sr.xi, sr.alpha, sr.beta, r1f);
    let a2 = constant(se.xi, se.alpha, se.beta, r2f);
    let hab = |xi: f64, alpha: f64, beta: f64| xi * xi / (xi * xi + 1.0) * alpha * beta;
    let g_rd = s.rd_link.avg_snr;
    let xi1 = hab(sr.xi, sr.alpha, sr.beta).powi(r1 as i32) * g_rd / (sr.mu() * r1f.powi(2 * r1 as i32));
    let xi2 = hab(se.xi, se.alpha, se.beta).powi(r2 as i32) * g_rd / (se.mu() * s.theta());

    let k1 = crate::channels::delta(r1, sr.xi * sr.xi + 1.0);
    let k2 = [
        crate::channels::delta(r1, sr.xi * sr.xi),
        crate::channels::delta(r1, sr.alpha),
        crate::channels::delta(r1, sr.beta),
    ]
    .concat();
    let first = FoxHSpec::new(
        3 * r1 as usize + 1,
        0,
        [k1, vec![1.0]].concat().into_iter().map(ScaledParam::unit).collect(),
        [k2, vec![0.0]].concat().into_iter().map(ScaledParam::unit).collect(),
    )?;
    let second = FoxHSpec::new(
        3,
        0,
        vec![ScaledParam::new(se.xi * se.xi + 1.0, r2f)],
        ScaledParam::repeated(&[se.xi * se.xi, se.alpha, se.beta], r2f),
    )?;
    let spec = FoxHBivarSpec::new(1, vec![JointParam::new(1.0, 1.0, 1.0)], vec![], first, second)?;
    let h = fox_h_bivariate(&spec, xi1, xi2)?;
    let coef = a1 * a2 * r1f.powf(sr.alpha + sr.beta - 1.0) * r2f / (2.0 * std::f64::consts::PI).powi(r1 as i32 - 1);
    Estimate::checked(1.0 - coef * h.value, coef * h.error, Provenance::ClosedFormValidated)
}

/// Mixture pieces of the density in the `G^{3r,0}_{r,3r}` form used when two
/// optical laws are combined in a single Meijer G.
pub(super) fn same_order(sr: &OpticalModel, se: &OpticalModel) -> Result<u32, SecrecyError> {
    if sr.r != se.r {
        return Err(SecrecyError::Scenario(
            "the S→R and S→E₁ hops must use the same detection scheme for this closed form".into(),
        ));
    }
    Ok(sr.r)
}
