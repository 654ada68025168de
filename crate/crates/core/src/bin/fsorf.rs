use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fsorf_secrecy::cli::{figure_series, run_series, validate, write_csv, CliError, Figure, McSection, SweepConfig};
use fsorf_secrecy::secrecy::FormulaMode;

#[derive(Parser)]
#[command(name = "fsorf", version, about = "Secrecy metrics of decode-and-forward mixed FSO/RF links")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Monte Carlo samples per grid point.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; defaults to the config's `output`, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Closed-form variant for `sweep` and `figure`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Validated)]
    mode: Mode,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured metrics over the sweep grid and write CSV.
    Sweep { config: PathBuf },
    /// Compare closed forms with quadrature and Monte Carlo and write a report.
    Validate { config: PathBuf },
    /// Run a named figure preset and write CSV.
    Figure { name: Figure },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Printed,
    Validated,
}

impl From<Mode> for FormulaMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Printed => FormulaMode::AsPrinted,
            Mode::Validated => FormulaMode::Validated,
        }
    }
}

fn apply_overrides(mc: &mut McSection, args: &Args) {
    if let Some(n) = args.samples {
        mc.samples = n;
    }
    if let Some(s) = args.seed {
        mc.seed = s;
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep(configs: &[SweepConfig], out: Option<&Path>, mode: FormulaMode) -> Result<(), CliError> {
    let outcome = run_series(configs, mode)?;
    write_csv(&outcome.rows, open_output(out)?)?;
    for note in &outcome.failures {
        eprintln!("numeric failure: {note}");
    }
    outcome.status()
}

fn run(args: &Args) -> Result<(), CliError> {
    let mode = args.mode.into();
    match &args.command {
        Command::Sweep { config } => {
            let mut cfg = SweepConfig::load(config)?;
            apply_overrides(&mut cfg.mc, args);
            let out = args.out.clone().or(cfg.output.clone());
            sweep(&[cfg], out.as_deref(), mode)
        }
        Command::Validate { config } => {
            let mut cfg = SweepConfig::load(config)?;
            apply_overrides(&mut cfg.mc, args);
            let out = args.out.clone().or(cfg.output.clone());
            let report = validate(&cfg)?;
            let mut w = open_output(out.as_deref())?;
            w.write_all(report.render().as_bytes())?;
            w.flush()?;
            Ok(())
        }
        Command::Figure { name } => {
            let mut mc = McSection::default();
            apply_overrides(&mut mc, args);
            let configs = figure_series(*name, mc);
            sweep(&configs, args.out.as_deref(), mode)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fsorf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
