//! Lists the figure presets and prints the first series of one of them as an
//! editable TOML file.
//!
//! `cargo run --release --example figure_presets -- fig2`

use fsorf_secrecy::cli::{figure_series, Figure, McSection};

fn main() {
    for fig in Figure::ALL {
        let series = figure_series(fig, McSection::default());
        let labels: Vec<_> = series.iter().filter_map(|c| c.scenario.label.clone()).collect();
        println!("{fig}: {} ({} curves: {})", fig.description(), series.len(), labels.join(", "));
    }
    let chosen: Figure = match std::env::args().nth(1) {
        Some(name) => name.parse().unwrap_or_else(|e| {
            eprintln!("{e}");
            std::process::exit(2);
        }),
        None => Figure::Fig6,
    };
    let first = &figure_series(chosen, McSection::default())[0];
    println!("\n# first {chosen} series as a config file\n{}", first.to_toml());
}
