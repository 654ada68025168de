//! Configuration, sweeps, the validation report and the figure presets
//! behind the `fsorf` binary.
//!
//! Output CSV columns are `snr_db,metric,mode,provenance,value,error_bound`.
//! `metric` is `<quantity>_<topology>` optionally followed by `@<series>`;
//! Monte Carlo outage rows report the bound event `γ_main ≤ Θ γ_eve` and a
//! second `..._exact_event` metric for the event `C_s ≤ R_s`. `mode` is the
//! closed-form variant (`validated` or `as_printed`) and `n/a` for every
//! other provenance. Monte Carlo `error_bound` is one standard error; the
//! asymptotic forms carry no error model and report `nan`.

mod config;
mod figures;
mod report;
mod sweep;

pub use config::{
    McSection, Method, MetricSpec, OpticalModelKind, OpticalSection, Quantity, RfSection, ScenarioSection,
    SweepConfig, SweepSection, SweepVariable,
};
pub use figures::{figure_series, Figure};
pub use report::{validate, LedgerCheck, PointCheck, ValidationReport};
pub use sweep::{run_series, run_sweep, write_csv, Row, SweepOutcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}
