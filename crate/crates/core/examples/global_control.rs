//! Integrating control on each office's deviation from the building average,
//! next to the purely local controller and the office market.

use climate_market::sim::{run_comparison, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    let configs: Vec<_> = [
        SchemeKind::ControlA,
        SchemeKind::MarketA,
        SchemeKind::ControlB,
    ]
    .into_iter()
    .map(ScenarioConfig::new)
    .collect();
    let comparison = run_comparison(&configs)?;
    for e in &comparison.entries {
        println!("{:<10} mean stddev {:.5}", e.scheme.name(), e.window_mean);
    }
    let market = comparison.window_mean(SchemeKind::MarketA).unwrap();
    let global = comparison.window_mean(SchemeKind::ControlB).unwrap();
    println!("market / global = {:.1}", market / global);
    Ok(())
}
