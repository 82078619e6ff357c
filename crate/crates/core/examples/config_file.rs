//! Builds a scenario from JSON, runs it, and writes the trace as CSV.

use climate_market::output::trace_csv;
use climate_market::sim::{run_scenario, ScenarioConfig};

fn main() -> climate_market::Result<()> {
    let config = ScenarioConfig::from_json(
        r#"{
            "scheme": "market-b-bounded",
            "building": { "offices": 8, "resource": "unlimited" },
            "initial_control": 1.5,
            "setpoints": [20, 20, 21, 21, 20, 20, 19, 19],
            "duration": 10
        }"#,
    )?;
    print!("{}", trace_csv(&run_scenario(&config)?, true));
    Ok(())
}
