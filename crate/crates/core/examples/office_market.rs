//! One afternoon under the office market: prices and spread every half hour.

use climate_market::sim::{run_scenario, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    let trace = run_scenario(&ScenarioConfig::new(SchemeKind::MarketA))?;
    for r in trace.records.iter().step_by(30) {
        let price = r
            .price
            .map_or("no trade".to_string(), |p| format!("{p:.3}"));
        let open: f64 = r.controls.iter().sum();
        println!(
            "{:02}:{:02}  stddev {:.4}  price {:>10}  total valve {:.2}",
            r.minute / 60,
            r.minute % 60,
            r.measure.stddev,
            price,
            open
        );
    }
    println!("mean stddev {:.5}", trace.window_mean()?);
    Ok(())
}
