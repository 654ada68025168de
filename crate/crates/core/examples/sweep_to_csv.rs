//! Loads a sweep configuration and prints the CSV that `fsorf sweep` writes.
//!
//! `cargo run --release --example sweep_to_csv -- examples/configs/dual_rd_sweep.toml`

use fsorf_secrecy::cli::{run_sweep, write_csv, SweepConfig};
use fsorf_secrecy::secrecy::FormulaMode;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/gamma_gamma_rayleigh.toml")));
    let mut cfg = SweepConfig::load(&path)?;
    cfg.mc.samples = cfg.mc.samples.min(200_000);

    let outcome = run_sweep(&cfg, FormulaMode::Validated)?;
    write_csv(&outcome.rows, std::io::stdout().lock())?;
    for note in &outcome.failures {
        eprintln!("failed cell: {note}");
    }
    Ok(())
}
