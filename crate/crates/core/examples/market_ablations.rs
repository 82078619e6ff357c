//! The office market next to its three ablations, each at its own volume
//! scale.

use climate_market::sim::{run_comparison, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    let schemes = [
        SchemeKind::MarketA,
        SchemeKind::MarketANoMoney,
        SchemeKind::MarketANoTemperature,
        SchemeKind::MarketANoAuction,
    ];
    let configs: Vec<_> = schemes.into_iter().map(ScenarioConfig::new).collect();
    let comparison = run_comparison(&configs)?;
    let reference = comparison.window_mean(SchemeKind::MarketA).unwrap();
    for (entry, config) in comparison.entries.iter().zip(&configs) {
        println!(
            "{:<24} alpha {:>3}  mean stddev {:.5}  ({:+.1}% vs market)",
            entry.scheme.name(),
            config.effective_alpha().unwrap(),
            entry.window_mean,
            100.0 * (entry.window_mean / reference - 1.0)
        );
    }
    Ok(())
}
