//! Acceptance run: one `criterion N: PASS|FAIL` line per criterion.
//!
//! `FSORF_ACCEPTANCE_SAMPLES` lowers the Monte Carlo budget of criterion 3
//! for quick local runs; the default is 10⁷ samples per grid point.

mod common;

use std::time::Instant;

use common::{bessel_k, distribution_grid, log_axis};
use fsorf_secrecy::channels::{Detection, Turbulence};
use fsorf_secrecy::cli::{
    figure_series, run_series, validate, Figure, McSection, Method, SweepConfig, SweepVariable, ValidationReport,
};
use fsorf_secrecy::secrecy::{
    sop_dual, sop_dual_asym, sop_single, sop_single_asym, spsc_dual, spsc_single, FormulaMode, SecrecyScenario,
    Topology,
};
use fsorf_secrecy::specfun::{fox_h_bivariate, meijer_g, FoxHBivarSpec, FoxHSpec, JointParam, MeijerGSpec, ScaledParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const V: FormulaMode = FormulaMode::Validated;
const ORDER_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn criterion_1() -> Outcome {
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    let rational = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
    let k0 = MeijerGSpec::new(2, 0, vec![], vec![0.0, 0.0]).unwrap();
    let k13 = MeijerGSpec::new(2, 0, vec![], vec![1.0 / 6.0, -1.0 / 6.0]).unwrap();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let x = (0.01f64.ln() + (1000f64).ln() * i as f64 / 199.0).exp();
        let z = 2.0 * x.sqrt();
        let g = |s: &MeijerGSpec| meijer_g(s, x).map(|e| e.value).map_err(|e| format!("x = {x}: {e}"));
        for (name, got, want) in [
            ("exp", g(&exp)?, (-x).exp()),
            ("1/(1+x)", g(&rational)?, 1.0 / (1.0 + x)),
            ("K0", g(&k0)?, 2.0 * bessel_k(0.0, z)),
            ("K1/3", g(&k13)?, 2.0 * bessel_k(1.0 / 3.0, z)),
        ] {
            let r = rel(got, want);
            worst = worst.max(r);
            ensure(r <= 1e-8, || format!("{name} at x = {x}: relative error {r:e}"))?;
        }
    }
    let unit = FoxHSpec::new(1, 0, vec![], vec![ScaledParam::unit(0.0)]).unwrap();
    let beta = FoxHBivarSpec::new(1, vec![JointParam::new(0.0, 1.0, 1.0)], vec![], unit.clone(), unit).unwrap();
    let mut worst_bi = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let at = |k: usize| (0.05f64.ln() + 400f64.ln() * k as f64 / 9.0).exp();
            let (x, y) = (at(i), at(j));
            let v = fox_h_bivariate(&beta, x, y).map_err(|e| format!("({x}, {y}): {e}"))?.value;
            let d = (v - 1.0 / (1.0 + x + y)).abs();
            worst_bi = worst_bi.max(d);
            ensure(d <= 1e-6, || format!("bivariate kernel at ({x}, {y}): error {d:e}"))?;
        }
    }
    Ok(format!("800 univariate checks, worst relative error {worst:.1e}; 100 bivariate, worst {worst_bi:.1e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let sets = distribution_grid(20.0);
    for (name, link) in &sets {
        let m = link.model().map_err(|e| format!("{name}: {e}"))?;
        let pdf = |g: f64| m.pdf(g).unwrap_or(f64::NAN);
        let total = log_axis(pdf, m.mu, 45.0, 600);
        worst = worst.max((total - 1.0).abs());
        ensure((total - 1.0).abs() <= 1e-6, || format!("{name}: pdf integrates to {total}"))?;
        let cdf = |g: f64| m.cdf(g).map_err(|e| format!("{name} cdf({g}): {e}"));
        ensure(cdf(0.0)? == 0.0, || format!("{name}: cdf(0) != 0"))?;
        let mut prev = 0.0;
        for k in 0..=120 {
            let g = m.mu * 10f64.powf(-6.0 + 0.1 * k as f64);
            let c = cdf(g)?;
            ensure(c >= prev - 1e-12 && c <= 1.0 + 1e-12, || format!("{name}: cdf({g}) = {c} after {prev}"))?;
            prev = c;
        }
        ensure(cdf(m.mu * 1e12)? > 1.0 - 1e-6, || format!("{name}: cdf does not reach 1"))?;
    }
    Ok(format!("{} parameter sets, worst |∫pdf − 1| = {worst:.1e}", sets.len()))
}

fn baselines(samples: u64) -> Vec<SweepConfig> {
    let mc = McSection { samples, seed: 1, ..McSection::default() };
    vec![figure_series(Figure::Fig2, mc)[0].clone(), figure_series(Figure::Fig6, mc)[0].clone()]
}

fn criterion_3(reports: &[ValidationReport]) -> Outcome {
    let mut scored = 0;
    let mut worst_quad = 0.0f64;
    let mut worst_z = 0.0f64;
    for report in reports {
        for p in &report.points {
            let what = || format!("{} {:?} at {} dB", report.label.as_deref().unwrap_or("?"), p.topology, p.snr_db);
            let dq = (p.validated - p.quadrature).abs();
            worst_quad = worst_quad.max(dq);
            ensure(dq <= 1e-4 && p.quadrature_pass, || format!("{}: |closed − quadrature| = {dq:e}", what()))?;
            if p.validated >= 1e-3 {
                let z = (p.validated - p.mc_mean).abs() / p.mc_std_error;
                worst_z = worst_z.max(z);
                scored += 1;
                ensure(z <= 3.0 && p.mc_pass == Some(true), || format!("{}: {z:.2} standard errors from MC", what()))?;
            }
        }
    }
    Ok(format!(
        "{} points, worst |closed − quadrature| = {worst_quad:.1e}, {scored} MC comparisons, worst {worst_z:.2} SE",
        reports.iter().map(|r| r.points.len()).sum::<usize>()
    ))
}

fn random_scenario(rng: &mut ChaCha8Rng) -> SecrecyScenario {
    let t = if rng.gen() { Turbulence::Strong } else { Turbulence::Moderate };
    let d = if rng.gen() { Detection::Heterodyne } else { Detection::IntensityModulation };
    let xi = rng.gen_range(1.0..7.0);
    let mut s = common::scenario(t, d, xi, rng.gen_range(1..=4), rng.gen_range(0.0..40.0), true);
    s.sr_link = s.sr_link.with_avg_snr(10f64.powf(rng.gen_range(1.5..4.5)));
    s.se1_link = s.se1_link.with_avg_snr(10f64.powf(rng.gen_range(0.0..2.0)));
    s.rs = rng.gen_range(0.0..1.0);
    s
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let s = random_scenario(&mut rng);
        let zero = s.with_rs(0.0);
        let fail = |e: fsorf_secrecy::secrecy::SecrecyError| format!("scenario {i}: {e}");
        let single = spsc_single(&s, V).map_err(fail)?.value - (1.0 - sop_single(&zero, V).map_err(fail)?.value);
        let dual = spsc_dual(&s, V).map_err(fail)?.value - (1.0 - sop_dual(&zero, V).map_err(fail)?.value);
        worst = worst.max(single.abs()).max(dual.abs());
        ensure(single.abs() <= 1e-10 && dual.abs() <= 1e-10, || format!("scenario {i}: gaps {single:e}, {dual:e}"))?;
    }
    Ok(format!("50 scenarios, worst gap {worst:.1e}"))
}

/// Closed-form SOP per series label, in grid order.
fn closed_curves(fig: Figure) -> Result<Vec<(String, Vec<f64>)>, String> {
    let mut configs = figure_series(fig, McSection::default());
    for cfg in &mut configs {
        cfg.sweep.metrics.retain(|m| m.method == Method::Closed);
    }
    let outcome = run_series(&configs, V).map_err(|e| format!("{fig}: {e}"))?;
    outcome.status().map_err(|e| format!("{fig}: {e}"))?;
    let mut curves: Vec<(String, Vec<f64>)> = Vec::new();
    for row in &outcome.rows {
        let label = row.metric.split('@').nth(1).unwrap_or_default().to_string();
        match curves.iter_mut().find(|(l, _)| *l == label) {
            Some((_, v)) => v.push(row.value),
            None => curves.push((label, vec![row.value])),
        }
    }
    Ok(curves)
}

fn criterion_5() -> Outcome {
    let mut comparisons = 0;
    let mut check = |what: &str, lower: &[f64], upper: &[f64]| -> Result<(), String> {
        for (k, (a, b)) in lower.iter().zip(upper).enumerate() {
            comparisons += 1;
            ensure(*a <= b + ORDER_TOL, || format!("{what} at grid point {k}: {a} > {b}"))?;
        }
        Ok(())
    };
    let single = closed_curves(Figure::Fig2)?;
    let mut dual = closed_curves(Figure::Fig6)?;
    dual.extend(closed_curves(Figure::Fig7)?);
    for (topology, curves) in [("single", &single), ("dual", &dual)] {
        let get = |t: &str, d: &str, xi: &str| {
            let label = format!("{t}_{d}_xi{xi}");
            curves.iter().find(|(l, _)| *l == label).map(|(_, v)| v.clone()).ok_or(format!("missing {label}"))
        };
        for t in ["strong", "moderate"] {
            for d in ["hd", "imdd"] {
                for xi in ["1.1", "6.7"] {
                    let c = get(t, d, xi)?;
                    let shifted: Vec<f64> = c[..c.len() - 1].to_vec();
                    check(&format!("{topology} {t}_{d}_xi{xi} decreasing in γ̄_RD"), &c[1..], &shifted)?;
                    if d == "hd" {
                        check(&format!("{topology} {t} ξ={xi}: r = 1 ≤ r = 2"), &c, &get(t, "imdd", xi)?)?;
                    }
                    if t == "moderate" {
                        check(&format!("{topology} {d} ξ={xi}: moderate ≤ strong"), &c, &get("strong", d, xi)?)?;
                    }
                }
                check(&format!("{topology} {t}_{d}: decreasing in ξ"), &get(t, d, "6.7")?, &get(t, d, "1.1")?)?;
            }
        }
    }
    Ok(format!("{comparisons} pointwise comparisons on the Fig. 2, 6 and 7 grids"))
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for mut cfg in baselines(1_000) {
        cfg.sweep.variable = SweepVariable::SrRd;
        let label = cfg.scenario.label.clone().unwrap_or_default();
        let dual = cfg.re2_link.is_some();
        let mut gaps = Vec::new();
        for db in [30.0, 50.0, 70.0] {
            let s = cfg.scenario_at(db).map_err(|e| e.to_string())?;
            let (exact, asym) = if dual {
                (sop_dual(&s, V), sop_dual_asym(&s))
            } else {
                (sop_single(&s, V), sop_single_asym(&s))
            };
            let exact = exact.map_err(|e| format!("{label} at {db} dB: {e}"))?.value;
            let asym = asym.map_err(|e| format!("{label} at {db} dB: {e}"))?.value;
            gaps.push(rel(asym, exact));
        }
        let what = if dual { "dual" } else { "single" };
        ensure(gaps[0] > gaps[1] && gaps[1] > gaps[2], || format!("{what} {label}: gaps {gaps:?} not decreasing"))?;
        ensure(gaps[2] < 0.1, || format!("{what} {label}: gap {:.3} at 70 dB", gaps[2]))?;
        summary.push(format!("{what} {label} gaps {:.1e}/{:.1e}/{:.1e}", gaps[0], gaps[1], gaps[2]));
    }
    Ok(summary.join("; "))
}

fn criterion_7(reports: &[ValidationReport]) -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut items = Vec::new();
    for report in reports {
        let label = report.label.clone().unwrap_or_default();
        let text = report.render();
        let path = dir.join(format!("validate_{label}.txt"));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        ensure(!text.is_empty(), || format!("{label}: empty report"))?;
        ensure(report.all_validated_pass, || format!("{label}: some validated rows fail"))?;
        for key in ["prefactor", "Lambda", "varpi", "upsilon"] {
            let topology = if matches!(key, "Lambda" | "varpi") { Topology::Dual } else { Topology::Single };
            if topology == Topology::Dual && report.points.iter().all(|p| p.topology == Topology::Single) {
                continue;
            }
            let entry = report
                .ledger
                .iter()
                .find(|l| l.item.contains(key) && l.topology == topology)
                .ok_or(format!("{label}: no ledger entry for {key}"))?;
            ensure(entry.pass.is_some() && entry.max_discrepancy.is_finite(), || {
                format!("{label}: ledger entry `{}` has no verdict", entry.item)
            })?;
            ensure(text.contains(&entry.item), || format!("{label}: `{}` missing from the rendered report", entry.item))?;
        }
        let verdicts: Vec<String> = report
            .ledger
            .iter()
            .filter_map(|l| {
                let verdict = if l.pass? { "pass" } else { "fail" };
                Some(format!("{} [{}] {verdict} {:.2e}", l.switch, l.topology.as_str(), l.max_discrepancy))
            })
            .collect();
        items.push(format!("{label}: {}", verdicts.join(", ")));
    }
    Ok(format!("reports in {}; {}", dir.display(), items.join("; ")))
}

fn main() {
    let samples = std::env::var("FSORF_ACCEPTANCE_SAMPLES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000u64);
    let mut failed = 0;
    let mut report = |n: u32, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1} s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1} s) {detail}");
            }
        }
    };

    let t = Instant::now();
    report(1, t, criterion_1());
    let t = Instant::now();
    report(2, t, criterion_2());

    let t = Instant::now();
    let reports: Result<Vec<ValidationReport>, String> =
        baselines(samples).iter().map(|cfg| validate(cfg).map_err(|e| e.to_string())).collect();
    let validation_secs = t.elapsed().as_secs_f64();
    match &reports {
        Ok(r) => report(3, t, criterion_3(r).map(|d| format!("{d}; {samples} samples per point"))),
        Err(e) => report(3, t, Err(e.clone())),
    }

    let t = Instant::now();
    report(4, t, criterion_4());
    let t = Instant::now();
    report(5, t, criterion_5());
    let t = Instant::now();
    report(6, t, criterion_6());

    let t = Instant::now();
    let c7 = match &reports {
        Ok(r) => criterion_7(r).map(|d| format!("{d}; validation took {validation_secs:.0} s")),
        Err(e) => Err(e.clone()),
    };
    report(7, t, c7);

    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
