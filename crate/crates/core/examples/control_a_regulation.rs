//! Local integrating control with an unlimited pipe over a full day, for a
//! few gains: largest setpoint deviation once the first hour has passed.

use climate_market::building::ResourceInput;
use climate_market::sim::{run_scenario, ScenarioConfig, SchemeKind, Timing};

fn main() -> climate_market::Result<()> {
    println!(
        "{:>6} {:>10} {:>14} {:>14}",
        "gain", "timing", "max |T - sp|", "mean stddev"
    );
    for timing in [Timing::Simultaneous, Timing::Delayed] {
        for beta in [1.0, 10.0, 100.0] {
            let mut config = ScenarioConfig::new(SchemeKind::ControlA);
            config.building.resource_input = ResourceInput::Unlimited;
            config.start_minute = 0;
            config.duration_minutes = 24 * 60;
            config.beta = beta;
            config.timing = timing;
            let trace = run_scenario(&config)?;
            println!(
                "{:>6} {:>10?} {:>14.4} {:>14.4e}",
                beta,
                timing,
                trace.max_abs_deviation(60),
                trace.window_mean()?
            );
        }
    }
    Ok(())
}
