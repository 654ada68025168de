use rayon::prelude::*;
use std::io::Write;

use super::config::{Method, MetricSpec, Quantity, SweepConfig};
use super::CliError;
use crate::mc::{estimate_sop, estimate_spsc, SimConfig};
use crate::secrecy::{
    sop_dual, sop_dual_asym, sop_quadrature, sop_single, sop_single_asym, sop_single_gg, spsc_dual, spsc_dual_asym,
    spsc_single, spsc_single_asym, Estimate, FormulaMode, Provenance, SecrecyScenario, Topology,
};

pub const CSV_HEADER: [&str; 6] = ["snr_db", "metric", "mode", "provenance", "value", "error_bound"];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub snr_db: f64,
    pub metric: String,
    pub mode: String,
    pub provenance: String,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub rows: Vec<Row>,
    /// One note per cell that failed numerically; those cells hold `nan`.
    pub failures: Vec<String>,
}

impl SweepOutcome {
    /// `Err(Numeric)` when any cell failed.
    pub fn status(&self) -> Result<(), CliError> {
        match self.failures.len() {
            0 => Ok(()),
            n => Err(CliError::Numeric(format!("{n} cell(s) failed: {}", self.failures.join("; ")))),
        }
    }

    /// Rows of one metric, ordered by SNR.
    pub fn series<'a>(&'a self, metric: &'a str, provenance: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.metric == metric && r.provenance == provenance)
    }
}

struct Cell<'a> {
    label: Option<&'a str>,
    snr_db: f64,
    scenario: SecrecyScenario,
    metric: MetricSpec,
    mc: SimConfig,
}

fn closed_mode(p: Provenance) -> &'static str {
    match p {
        Provenance::ClosedFormValidated => "validated",
        Provenance::ClosedFormAsPrinted => "as_printed",
        _ => "n/a",
    }
}

fn planned_provenance(metric: &MetricSpec, mode: FormulaMode) -> Provenance {
    match metric.method {
        Method::Closed => mode.variant().provenance(),
        Method::Gg => Provenance::ClosedFormValidated,
        Method::Asymptotic => Provenance::Asymptotic,
        Method::Quadrature => Provenance::Quadrature,
        Method::Mc => Provenance::MonteCarlo,
    }
}

fn closed_form(s: &SecrecyScenario, m: &MetricSpec, mode: FormulaMode) -> Result<Estimate, String> {
    let r = match (m.method, m.quantity, m.topology) {
        (Method::Gg, _, _) => sop_single_gg(s),
        (Method::Closed, Quantity::Sop, Topology::Single) => sop_single(s, mode),
        (Method::Closed, Quantity::Spsc, Topology::Single) => spsc_single(s, mode),
        (Method::Closed, Quantity::Sop, Topology::Dual) => sop_dual(s, mode),
        (Method::Closed, Quantity::Spsc, Topology::Dual) => spsc_dual(s, mode),
        (Method::Asymptotic, Quantity::Sop, Topology::Single) => sop_single_asym(s),
        (Method::Asymptotic, Quantity::Spsc, Topology::Single) => spsc_single_asym(s),
        (Method::Asymptotic, Quantity::Sop, Topology::Dual) => sop_dual_asym(s),
        (Method::Asymptotic, Quantity::Spsc, Topology::Dual) => spsc_dual_asym(s),
        (Method::Quadrature, Quantity::Sop, t) => sop_quadrature(s, t).map(|q| q.sop),
        (Method::Quadrature, Quantity::Spsc, t) => sop_quadrature(&s.with_rs(0.0), t).map(|q| Estimate {
            value: 1.0 - q.sop.value,
            ..q.sop
        }),
        (Method::Mc, _, _) => unreachable!("simulated separately"),
    };
    r.map_err(|e| e.to_string())
}

/// `(metric suffix, estimate)` pairs for one cell.
fn evaluate(cell: &Cell, mode: FormulaMode) -> Result<Vec<(&'static str, Estimate)>, String> {
    let (s, m) = (&cell.scenario, &cell.metric);
    if m.method != Method::Mc {
        return Ok(vec![("", closed_form(s, m, mode)?)]);
    }
    let mc = |mean: f64, se: f64| Estimate { value: mean, error_bound: se, provenance: Provenance::MonteCarlo };
    match m.quantity {
        Quantity::Sop => {
            let sim = estimate_sop(s, &cell.mc, m.topology).map_err(|e| e.to_string())?;
            Ok(vec![
                ("", mc(sim.bound.mean, sim.bound.std_error)),
                ("_exact_event", mc(sim.exact.mean, sim.exact.std_error)),
            ])
        }
        Quantity::Spsc => {
            let e = estimate_spsc(s, &cell.mc, m.topology).map_err(|e| e.to_string())?;
            Ok(vec![("", mc(e.mean, e.std_error))])
        }
    }
}

fn metric_column(name: &str, suffix: &str, label: Option<&str>) -> String {
    match label {
        Some(l) => format!("{name}{suffix}@{l}"),
        None => format!("{name}{suffix}"),
    }
}

/// Evaluates every `(series, grid point, metric)` cell. Configuration problems
/// are returned as errors before any numerics run; numeric failures become
/// `nan` cells listed in [`SweepOutcome::failures`].
pub fn run_series(configs: &[SweepConfig], mode: FormulaMode) -> Result<SweepOutcome, CliError> {
    let mut cells = Vec::new();
    for cfg in configs {
        cfg.check()?;
        let mut metrics = cfg.sweep.metrics.clone();
        metrics.sort();
        metrics.dedup();
        for snr_db in cfg.grid() {
            let scenario = cfg.scenario_at(snr_db)?;
            for &metric in &metrics {
                cells.push(Cell {
                    label: cfg.scenario.label.as_deref(),
                    snr_db,
                    scenario,
                    metric,
                    mc: cfg.mc.sim_config(),
                });
            }
        }
    }

    let results: Vec<(Vec<Row>, Option<String>)> = cells
        .par_iter()
        .map(|cell| {
            let name = cell.metric.name();
            match evaluate(cell, mode) {
                Ok(estimates) => {
                    let rows = estimates
                        .into_iter()
                        .map(|(suffix, e)| Row {
                            snr_db: cell.snr_db,
                            metric: metric_column(&name, suffix, cell.label),
                            mode: closed_mode(e.provenance).to_string(),
                            provenance: e.provenance.as_str().to_string(),
                            value: e.value,
                            error_bound: e.error_bound,
                        })
                        .collect();
                    (rows, None)
                }
                Err(err) => {
                    let p = planned_provenance(&cell.metric, mode);
                    let metric = metric_column(&name, "", cell.label);
                    let note = format!("{metric} at {} dB: {err}", cell.snr_db);
                    let row = Row {
                        snr_db: cell.snr_db,
                        metric,
                        mode: closed_mode(p).to_string(),
                        provenance: p.as_str().to_string(),
                        value: f64::NAN,
                        error_bound: f64::NAN,
                    };
                    (vec![row], Some(note))
                }
            }
        })
        .collect();

    let mut out = SweepOutcome::default();
    for (rows, note) in results {
        out.rows.extend(rows);
        out.failures.extend(note);
    }
    out.rows.sort_by(|a, b| {
        a.metric
            .cmp(&b.metric)
            .then(a.snr_db.total_cmp(&b.snr_db))
            .then(a.provenance.cmp(&b.provenance))
    });
    Ok(out)
}

pub fn run_sweep(cfg: &SweepConfig, mode: FormulaMode) -> Result<SweepOutcome, CliError> {
    run_series(std::slice::from_ref(cfg), mode)
}

pub(crate) fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            format_number(r.snr_db),
            r.metric.clone(),
            r.mode.clone(),
            r.provenance.clone(),
            format_number(r.value),
            format_number(r.error_bound),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_format_compactly() {
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(35.0), "35");
        assert_eq!(format_number(0.0), "0");
    }

    #[test]
    fn csv_has_the_documented_header() {
        let rows = vec![Row {
            snr_db: 5.0,
            metric: "sop_single".into(),
            mode: "validated".into(),
            provenance: "closed_form_validated".into(),
            value: f64::NAN,
            error_bound: 1e-9,
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "snr_db,metric,mode,provenance,value,error_bound\n5,sop_single,validated,closed_form_validated,nan,1e-9\n"
        );
    }
}
