//! With equal utility weights the unbounded equilibrium market reproduces
//! global integrating control step for step.

use climate_market::sim::{run_scenario, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    let control = run_scenario(&ScenarioConfig::new(SchemeKind::ControlB))?;
    let market = run_scenario(&ScenarioConfig::new(SchemeKind::MarketBUnbounded))?;
    let mut worst: f64 = 0.0;
    for (a, b) in control.records.iter().zip(&market.records) {
        for (x, y) in a.controls.iter().zip(&b.controls) {
            worst = worst.max((x - y).abs());
        }
    }
    println!(
        "largest control-signal difference over {} steps: {worst:.3e}",
        control.len()
    );
    let last = market.records.last().unwrap();
    println!("final clearing price {:.6}", last.price.unwrap());
    Ok(())
}
