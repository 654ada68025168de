//! SNR distributions of the three link types: Málaga and Gamma-Gamma optical
//! hops under either detection scheme, and a Nakagami-m RF hop.

use fsorf_secrecy::channels::{
    db_to_linear, gamma_gamma_link, Detection, MalagaLink, NakagamiLink, OpticalLink, Turbulence,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let strong = Turbulence::Strong;
    let base = MalagaLink {
        alpha: strong.alpha(),
        beta: strong.beta(),
        rho: 0.95,
        b0: 0.25,
        omega: 0.5,
        phase_diff: std::f64::consts::FRAC_PI_2,
        xi: 1.1,
        detection: Detection::Heterodyne,
        avg_snr: db_to_linear(20.0),
    };
    let derived = base.derive()?;
    println!("Málaga derived constants: g = {:.4}, Ω' = {:.4}, A = {:.6}, B = {:.4}", derived.g, derived.omega_prime, derived.a, derived.b);
    println!("mixture weights a_m: {:?}", derived.a_m);

    let links: Vec<(&str, OpticalLink)> = vec![
        ("Málaga HD", base.into()),
        ("Málaga IM/DD", MalagaLink { detection: Detection::IntensityModulation, ..base }.into()),
        ("Gamma-Gamma HD", gamma_gamma_link(2.296, 2.0, 1.1, Detection::Heterodyne, db_to_linear(20.0)).into()),
    ];
    for (name, link) in links {
        let m = link.model()?;
        println!("\n{name}: r = {}, μ = {:.3}", m.r, m.mu);
        for ratio in [0.01, 0.1, 1.0, 10.0] {
            let g = ratio * m.mu;
            println!(
                "  γ = {:>9.3}  pdf = {:.4e}  cdf = {:.6}  cdf + ccdf - 1 = {:+.1e}",
                g,
                m.pdf(g)?,
                m.cdf(g)?,
                m.cdf(g)? + m.ccdf(g)? - 1.0
            );
        }
    }

    let rf = NakagamiLink::new(2, db_to_linear(10.0))?;
    println!("\nNakagami m = 2, γ̄ = 10 dB");
    for g in [1.0, 5.0, 10.0, 30.0] {
        println!("  γ = {g:>4}  pdf = {:.5}  cdf = {:.6}", rf.pdf(g)?, rf.cdf(g)?);
    }
    Ok(())
}
