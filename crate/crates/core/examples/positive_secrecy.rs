//! Probability of strictly positive secrecy capacity for both topologies,
//! next to the complement of the outage bound at zero target rate.

use fsorf_secrecy::channels::{db_to_linear, gamma_gamma_link, Detection, NakagamiLink};
use fsorf_secrecy::secrecy::{sop_dual, sop_single, spsc_dual, spsc_single, FormulaMode, SecrecyScenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mode = FormulaMode::Validated;
    for db in [0.0, 10.0, 20.0, 30.0] {
        let s = SecrecyScenario {
            sr_link: gamma_gamma_link(4.2, 3.0, 1.1, Detection::Heterodyne, db_to_linear(30.0)).into(),
            se1_link: gamma_gamma_link(4.2, 3.0, 1.1, Detection::Heterodyne, db_to_linear(10.0)).into(),
            rd_link: NakagamiLink::new(1, db_to_linear(db))?,
            re2_link: Some(NakagamiLink::new(2, db_to_linear(10.0))?),
            rs: 0.0,
        };
        let single = spsc_single(&s, mode)?.value;
        let dual = spsc_dual(&s, mode)?.value;
        println!(
            "γ̄_RD = {db:>4} dB  SPSC single = {single:.8} (1 - SOP = {:.8})  dual = {dual:.8} (1 - SOP = {:.8})",
            1.0 - sop_single(&s, mode)?.value,
            1.0 - sop_dual(&s, mode)?.value
        );
    }
    Ok(())
}
