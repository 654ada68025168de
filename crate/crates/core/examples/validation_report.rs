//! Oracle comparison and arbitration of the typeset factors on a short grid.

use fsorf_secrecy::cli::{validate, SweepConfig};
use std::path::Path;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/dual_rd_sweep.toml"));
    let mut cfg = SweepConfig::load(path)?;
    cfg.sweep.step_db = 20.0;
    cfg.mc.samples = 200_000;

    let report = validate(&cfg)?;
    print!("{}", report.render());
    for item in report.ledger.iter().filter(|l| l.pass == Some(false)) {
        eprintln!("typeset `{}` disagrees with quadrature by up to {:.3e}", item.switch, item.max_discrepancy);
    }
    Ok(())
}
