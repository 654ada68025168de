mod common;

use common::{gamma_gamma, scenario};
use fsorf_secrecy::channels::{db_to_linear, Detection, NakagamiLink, OpticalLink, Turbulence};
use fsorf_secrecy::mc::{estimate_sop, estimate_spsc, McError, SimConfig};
use fsorf_secrecy::secrecy::{
    sop_dual, sop_quadrature, sop_single, sop_single_gg, spsc_dual, spsc_single, FormulaMode, Provenance,
    SecrecyError, SecrecyScenario, Topology,
};
use proptest::prelude::*;

const V: FormulaMode = FormulaMode::Validated;

fn with_sr_db(mut s: SecrecyScenario, db: f64) -> SecrecyScenario {
    s.sr_link = s.sr_link.with_avg_snr(db_to_linear(db));
    s
}

fn with_se_db(mut s: SecrecyScenario, db: f64) -> SecrecyScenario {
    s.se1_link = s.se1_link.with_avg_snr(db_to_linear(db));
    s
}

fn with_rd_db(mut s: SecrecyScenario, db: f64) -> SecrecyScenario {
    s.rd_link.avg_snr = db_to_linear(db);
    s
}

fn grid20(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..20).map(move |k| lo + (hi - lo) * k as f64 / 19.0)
}

#[test]
fn single_closed_form_matches_quadrature() {
    let cases = [
        scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 1, 10.0, false),
        scenario(Turbulence::Moderate, Detection::IntensityModulation, 6.7, 3, 20.0, false),
        scenario(Turbulence::Moderate, Detection::Heterodyne, 2.0, 4, 5.0, false),
    ];
    for s in cases {
        let closed = sop_single(&s, V).unwrap();
        let quad = sop_quadrature(&s, Topology::Single).unwrap().sop;
        assert_eq!(closed.provenance, Provenance::ClosedFormValidated);
        assert!((closed.value - quad.value).abs() < 1e-7, "{} vs {}", closed.value, quad.value);
    }
}

#[test]
fn dual_closed_form_matches_quadrature_per_hop() {
    let cases = [
        scenario(Turbulence::Strong, Detection::IntensityModulation, 1.1, 2, 10.0, true),
        scenario(Turbulence::Moderate, Detection::Heterodyne, 6.7, 4, 5.0, true),
    ];
    for s in cases {
        let closed = sop_dual(&s, V).unwrap();
        let q = sop_quadrature(&s, Topology::Dual).unwrap();
        assert!((closed.value - q.sop.value).abs() < 1e-7, "{} vs {}", closed.value, q.sop.value);
        let (j_sr, j_rd) = (q.sr_hop.unwrap(), q.rd_hop.unwrap());
        assert!((1.0 - (1.0 - j_sr) * (1.0 - j_rd) - q.sop.value).abs() < 1e-15);
    }
}

#[test]
fn gamma_gamma_rayleigh_form_matches_quadrature() {
    for d in [Detection::Heterodyne, Detection::IntensityModulation] {
        let s = SecrecyScenario {
            sr_link: gamma_gamma(Turbulence::Moderate, d, 1.1, 30.0),
            se1_link: gamma_gamma(Turbulence::Moderate, d, 1.1, 10.0),
            rd_link: NakagamiLink::new(1, db_to_linear(15.0)).unwrap(),
            re2_link: None,
            rs: 0.01,
        };
        let gg = sop_single_gg(&s).unwrap().value;
        let quad = sop_quadrature(&s, Topology::Single).unwrap().sop.value;
        assert!((gg - quad).abs() < 1e-7, "{d:?}: {gg} vs {quad}");
    }
    let malaga = scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 1, 10.0, false);
    assert!(matches!(sop_single_gg(&malaga), Err(SecrecyError::Scenario(_))));
}

#[test]
fn sop_is_monotone_in_every_snr_and_the_rate() {
    let base = scenario(Turbulence::Strong, Detection::Heterodyne, 6.7, 2, 10.0, true);
    let check = |name: &str, values: Vec<f64>, increasing: bool| {
        for w in values.windows(2) {
            let ok = if increasing { w[1] >= w[0] - 1e-9 } else { w[1] <= w[0] + 1e-9 };
            assert!(ok, "{name}: {:?}", w);
        }
    };
    for topology in [Topology::Single, Topology::Dual] {
        let sop = |s: &SecrecyScenario| match topology {
            Topology::Single => sop_single(s, V).unwrap().value,
            Topology::Dual => sop_dual(s, V).unwrap().value,
        };
        check("γ̄_RD", grid20(0.0, 40.0).map(|db| sop(&with_rd_db(base, db))).collect(), false);
        check("γ̄_SR", grid20(10.0, 50.0).map(|db| sop(&with_sr_db(base, db))).collect(), false);
        check("γ̄_SE", grid20(-10.0, 30.0).map(|db| sop(&with_se_db(base, db))).collect(), true);
        check("R_s", grid20(0.0, 2.0).map(|rs| sop(&base.with_rs(rs))).collect(), true);
    }
    let re2 = |db: f64| SecrecyScenario { re2_link: Some(NakagamiLink::new(2, db_to_linear(db)).unwrap()), ..base };
    check("γ̄_RE2", grid20(-10.0, 30.0).map(|db| sop_dual(&re2(db), V).unwrap().value).collect(), true);
}

#[test]
fn dual_forms_need_matching_detection() {
    let mut s = scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 2, 10.0, true);
    s.se1_link = common::malaga(Turbulence::Strong, Detection::IntensityModulation, 1.1, 10.0).into();
    assert!(matches!(sop_dual(&s, V), Err(SecrecyError::Scenario(_))));
    let no_re2 = scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 2, 10.0, false);
    assert!(matches!(sop_dual(&no_re2, V), Err(SecrecyError::Scenario(_))));
}

#[test]
fn negative_rate_is_rejected() {
    let s = scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 2, 10.0, false).with_rs(-0.1);
    assert!(sop_single(&s, V).is_err());
}

#[test]
fn monte_carlo_agrees_with_closed_forms() {
    let cfg = SimConfig::new(400_000, 3);
    for (s, topology) in [
        (scenario(Turbulence::Strong, Detection::IntensityModulation, 1.1, 2, 10.0, false), Topology::Single),
        (scenario(Turbulence::Moderate, Detection::Heterodyne, 6.7, 1, 5.0, true), Topology::Dual),
    ] {
        let closed = match topology {
            Topology::Single => sop_single(&s, V),
            Topology::Dual => sop_dual(&s, V),
        }
        .unwrap()
        .value;
        let sim = estimate_sop(&s, &cfg, topology).unwrap();
        let z = (sim.bound.mean - closed) / sim.bound.std_error;
        assert!(z.abs() < 4.0, "{topology:?}: z = {z}");
        // the exact event includes the bound event's complement slice: it is never rarer
        assert!(sim.exact.mean >= sim.bound.mean - 3.0 * sim.bound.std_error);
    }
}

#[test]
fn monte_carlo_is_reproducible_across_thread_counts() {
    let s = scenario(Turbulence::Strong, Detection::Heterodyne, 1.1, 2, 10.0, true);
    let cfg = SimConfig::new(300_000, 42);
    let a = estimate_sop(&s, &cfg, Topology::Dual).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool.install(|| estimate_sop(&s, &cfg, Topology::Dual).unwrap());
    assert_eq!(a, b);
    let c = estimate_sop(&s, &SimConfig::new(300_000, 43), Topology::Dual).unwrap();
    assert_ne!(a.bound.mean, c.bound.mean);
}

#[test]
fn monte_carlo_spsc_is_the_zero_rate_complement() {
    let s = scenario(Turbulence::Moderate, Detection::IntensityModulation, 1.1, 2, 10.0, true);
    let cfg = SimConfig::new(100_000, 9);
    for topology in [Topology::Single, Topology::Dual] {
        let spsc = estimate_spsc(&s, &cfg, topology).unwrap();
        let sop = estimate_sop(&s.with_rs(0.0), &cfg, topology).unwrap();
        assert!((spsc.mean - (1.0 - sop.exact.mean)).abs() < 1e-12);
    }
    assert!(matches!(estimate_sop(&s, &SimConfig::new(999, 1), Topology::Single), Err(McError::TooFewSamples(999))));
}

fn random_scenario(t: bool, imdd: bool, xi: f64, m_rd: u32, rd_db: f64, se_db: f64) -> SecrecyScenario {
    let turbulence = if t { Turbulence::Strong } else { Turbulence::Moderate };
    let detection = if imdd { Detection::IntensityModulation } else { Detection::Heterodyne };
    let mut s = scenario(turbulence, detection, xi, m_rd, rd_db, true);
    s.se1_link = OpticalLink::from(common::malaga(turbulence, detection, xi, se_db));
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn spsc_is_one_minus_zero_rate_sop(
        t in any::<bool>(),
        imdd in any::<bool>(),
        xi in 1.0f64..7.0,
        m_rd in 1u32..4,
        rd_db in 0.0f64..30.0,
        se_db in 0.0f64..20.0,
    ) {
        let s = random_scenario(t, imdd, xi, m_rd, rd_db, se_db);
        let zero = s.with_rs(0.0);
        prop_assert!((spsc_single(&s, V).unwrap().value - (1.0 - sop_single(&zero, V).unwrap().value)).abs() < 1e-10);
        prop_assert!((spsc_dual(&s, V).unwrap().value - (1.0 - sop_dual(&zero, V).unwrap().value)).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_stay_in_the_unit_interval(
        t in any::<bool>(),
        imdd in any::<bool>(),
        xi in 1.0f64..7.0,
        m_rd in 1u32..4,
        rd_db in -5.0f64..45.0,
        rs in 0.0f64..1.0,
    ) {
        let s = random_scenario(t, imdd, xi, m_rd, rd_db, 10.0).with_rs(rs);
        for v in [sop_single(&s, V).unwrap().value, sop_dual(&s, V).unwrap().value] {
            prop_assert!((0.0..=1.0).contains(&v), "{}", v);
        }
    }
}
