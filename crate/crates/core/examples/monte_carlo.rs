//! Seeded Monte Carlo of the generative channel model next to the closed
//! form. Both the bound event `γ_eq ≤ Θγ_E` and the exact outage event are
//! simulated on the same sample paths.

use fsorf_secrecy::channels::{db_to_linear, Detection, MalagaLink, NakagamiLink, Turbulence};
use fsorf_secrecy::mc::{estimate_sop, estimate_spsc, SimConfig};
use fsorf_secrecy::secrecy::{sop_single, spsc_single, FormulaMode, SecrecyScenario, Topology};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Turbulence::Strong;
    let sr = MalagaLink {
        alpha: t.alpha(),
        beta: t.beta(),
        rho: 0.95,
        b0: 0.25,
        omega: 0.5,
        phase_diff: std::f64::consts::FRAC_PI_2,
        xi: 1.1,
        detection: Detection::IntensityModulation,
        avg_snr: db_to_linear(30.0),
    };
    let s = SecrecyScenario {
        sr_link: sr.into(),
        se1_link: MalagaLink { avg_snr: db_to_linear(10.0), ..sr }.into(),
        rd_link: NakagamiLink::new(2, db_to_linear(15.0))?,
        re2_link: None,
        rs: 0.01,
    };
    let closed = sop_single(&s, FormulaMode::Validated)?.value;
    for (n, antithetic) in [(100_000, false), (1_000_000, false), (1_000_000, true)] {
        let cfg = SimConfig { sample_count: n, seed: 7, antithetic };
        let sim = estimate_sop(&s, &cfg, Topology::Single)?;
        println!(
            "n = {n:>8} antithetic = {antithetic:<5}  bound {:.5} ± {:.5} (closed {closed:.5}, z = {:+.2})  exact event {:.5} ± {:.5}",
            sim.bound.mean,
            sim.bound.std_error,
            (sim.bound.mean - closed) / sim.bound.std_error,
            sim.exact.mean,
            sim.exact.std_error
        );
    }
    let spsc = estimate_spsc(&s, &SimConfig::new(1_000_000, 7), Topology::Single)?;
    println!("SPSC: MC {:.5} ± {:.5}, closed {:.5}", spsc.mean, spsc.std_error, spsc_single(&s, FormulaMode::Validated)?.value);
    Ok(())
}
