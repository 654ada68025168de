//! Two eavesdroppers: optical on S→R and Nakagami-m RF on R→D. The outage
//! bound factorizes into the optical hop term and the RF hop term `Λ`.

use fsorf_secrecy::channels::{db_to_linear, Detection, MalagaLink, NakagamiLink, Turbulence};
use fsorf_secrecy::secrecy::{lambda, sop_dual, sop_quadrature, sop_sr_hop, FormulaMode, FormulaVariant, SecrecyScenario, Topology};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Turbulence::Moderate;
    let sr = MalagaLink {
        alpha: t.alpha(),
        beta: t.beta(),
        rho: 0.95,
        b0: 0.25,
        omega: 0.5,
        phase_diff: std::f64::consts::FRAC_PI_2,
        xi: 6.7,
        detection: Detection::IntensityModulation,
        avg_snr: db_to_linear(30.0),
    };
    let re2 = NakagamiLink::new(2, db_to_linear(10.0))?;

    println!("{:>6} {:>10} {:>10} {:>12} {:>12}", "γ̄_RD", "J_SR", "Λ", "closed", "quadrature");
    for db in (0..=40).step_by(5) {
        let s = SecrecyScenario {
            sr_link: sr.into(),
            se1_link: MalagaLink { avg_snr: db_to_linear(10.0), ..sr }.into(),
            rd_link: NakagamiLink::new(2, db_to_linear(db as f64))?,
            re2_link: Some(re2),
            rs: 0.01,
        };
        let (j, _) = sop_sr_hop(&s, s.theta(), &FormulaVariant::VALIDATED)?;
        let lam = lambda(&s.rd_link, &re2, s.theta(), false);
        let closed = sop_dual(&s, FormulaMode::Validated)?;
        let quad = sop_quadrature(&s, Topology::Dual)?;
        println!("{db:>6} {j:>10.6} {lam:>10.6} {:>12.8} {:>12.8}", closed.value, quad.sop.value);
    }
    Ok(())
}
