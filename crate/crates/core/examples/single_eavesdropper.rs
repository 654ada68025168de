//! Secrecy outage bound with an optical eavesdropper on the S→R hop, swept
//! over the R→D average SNR. Each point is computed three ways: the corrected
//! closed form, the closed form exactly as typeset, and direct quadrature.

use fsorf_secrecy::channels::{db_to_linear, Detection, MalagaLink, NakagamiLink, Turbulence};
use fsorf_secrecy::secrecy::{sop_quadrature, sop_single, FormulaMode, SecrecyScenario, Topology};

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
        detection: Detection::Heterodyne,
        avg_snr: db_to_linear(30.0),
    };
    let se = MalagaLink { avg_snr: db_to_linear(10.0), ..sr };

    println!("{:>6} {:>12} {:>12} {:>12}", "γ̄_RD", "validated", "as printed", "quadrature");
    for db in (0..=40).step_by(10) {
        let s = SecrecyScenario {
            sr_link: sr.into(),
            se1_link: se.into(),
            rd_link: NakagamiLink::new(2, db_to_linear(db as f64))?,
            re2_link: None,
            rs: 0.01,
        };
        let v = sop_single(&s, FormulaMode::Validated)?;
        let p = sop_single(&s, FormulaMode::AsPrinted)
            .map(|e| format!("{:.6}", e.value))
            .unwrap_or_else(|e| e.to_string());
        let q = sop_quadrature(&s, Topology::Single)?;
        println!("{db:>6} {:>12.6} {p:>12} {:>12.6}", v.value, q.sop.value);
    }
    Ok(())
}
