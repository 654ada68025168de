//! Meijer G, Fox H and the bivariate Fox H against elementary closed forms.
//!
//! Run with `cargo run --release --example special_functions`.

use fsorf_secrecy::specfun::{
    fox_h, fox_h_bivariate, meijer_g, FoxHBivarSpec, FoxHSpec, JointParam, MeijerGSpec, ScaledParam,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // G^{1,0}_{0,1}[x | -; 0] = e^{-x}
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0])?;
    // G^{1,1}_{1,1}[x | 0; 0] = 1/(1+x)
    let rational = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0])?;
    // G^{2,0}_{0,2}[x | -; ν/2, -ν/2] = 2 K_ν(2√x), here with ν = 1
    let bessel = MeijerGSpec::new(2, 0, vec![], vec![0.5, -0.5])?;

    println!("{:>6} {:>14} {:>14} {:>14}", "x", "G exp", "G 1/(1+x)", "G 2K1(2sqrt x)");
    for x in [0.01, 0.1, 1.0, 10.0] {
        let e = meijer_g(&exp, x)?;
        let r = meijer_g(&rational, x)?;
        let b = meijer_g(&bessel, x)?;
        println!("{x:>6} {:>14.10} {:>14.10} {:>14.10}", e.value, r.value, b.value);
        println!("{:>6} {:>14.10} {:>14.10}", "exact", (-x).exp(), 1.0 / (1.0 + x));
    }

    // H^{1,0}_{0,1}[x | -; (0, 1/2)] = 2e^{-x²}
    let scaled = FoxHSpec::new(1, 0, vec![], vec![ScaledParam::new(0.0, 0.5)])?;
    let h = fox_h(&scaled, 1.3)?;
    println!("\nH[(0, 1/2)] at 1.3 = {:.12}, 2e^(-1.69) = {:.12}", h.value, 2.0 * (-1.69f64).exp());

    // Γ(1-s-t)Γ(s)Γ(t) has the closed form 1/(1+x+y)
    let unit = FoxHSpec::new(1, 0, vec![], vec![ScaledParam::unit(0.0)])?;
    let biv = FoxHBivarSpec::new(1, vec![JointParam::new(0.0, 1.0, 1.0)], vec![], unit.clone(), unit)?;
    for (x, y) in [(0.5, 0.5), (2.0, 0.1), (0.05, 7.0)] {
        let v = fox_h_bivariate(&biv, x, y)?;
        println!(
            "bivariate H({x}, {y}) = {:.10} (±{:.1e}), 1/(1+x+y) = {:.10}",
            v.value,
            v.error,
            1.0 / (1.0 + x + y)
        );
    }
    Ok(())
}
