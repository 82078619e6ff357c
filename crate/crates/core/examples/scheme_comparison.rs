//! Every scheme on the same afternoon weather, ranked by mean spread.

use climate_market::sim::{run_comparison, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    let configs: Vec<ScenarioConfig> = SchemeKind::ALL
        .into_iter()
        .map(ScenarioConfig::new)
        .collect();
    let comparison = run_comparison(&configs)?;
    let mut rows: Vec<_> = comparison
        .entries
        .iter()
        .map(|e| (e.scheme, e.window_mean))
        .collect();
    rows.sort_by(|a, b| a.1.total_cmp(&b.1));
    println!("{:<26} {:>14}", "scheme", "mean stddev");
    for (scheme, mean) in rows {
        println!("{:<26} {:>14.6e}", scheme.name(), mean);
    }
    Ok(())
}
