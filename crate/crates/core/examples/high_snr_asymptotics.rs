//! High-SNR expansions against the exact closed forms as γ̄_SR and γ̄_RD grow
//! together.

use fsorf_secrecy::channels::{db_to_linear, Detection, MalagaLink, NakagamiLink, Turbulence};
use fsorf_secrecy::secrecy::{sop_dual, sop_dual_asym, sop_single, sop_single_asym, FormulaMode, SecrecyScenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Turbulence::Strong;
    for detection in [Detection::Heterodyne, Detection::IntensityModulation] {
        let sr = MalagaLink {
            alpha: t.alpha(),
            beta: t.beta(),
            rho: 0.95,
            b0: 0.25,
            omega: 0.5,
            phase_diff: std::f64::consts::FRAC_PI_2,
            xi: 1.1,
            detection,
            avg_snr: 1.0,
        };
        println!("{detection:?}");
        for db in [30.0, 50.0, 70.0] {
            let s = SecrecyScenario {
                sr_link: MalagaLink { avg_snr: db_to_linear(db), ..sr }.into(),
                se1_link: MalagaLink { avg_snr: db_to_linear(10.0), ..sr }.into(),
                rd_link: NakagamiLink::new(2, db_to_linear(db))?,
                re2_link: Some(NakagamiLink::new(2, db_to_linear(10.0))?),
                rs: 0.01,
            };
            let (e1, a1) = (sop_single(&s, FormulaMode::Validated)?.value, sop_single_asym(&s)?.value);
            let (e2, a2) = (sop_dual(&s, FormulaMode::Validated)?.value, sop_dual_asym(&s)?.value);
            println!(
                "  {db} dB  single {e1:.4e} ~ {a1:.4e} (gap {:.1e})   dual {e2:.4e} ~ {a2:.4e} (gap {:.1e})",
                (a1 - e1).abs() / e1,
                (a2 - e2).abs() / e2
            );
        }
    }
    Ok(())
}
