//! Offices without cooling follow the weather with a lag that grows with
//! their thermal mass.

use climate_market::sim::{run_scenario, ScenarioConfig, SchemeKind};

fn main() -> climate_market::Result<()> {
    for rc in [3.0, 10.0] {
        let mut config = ScenarioConfig::new(SchemeKind::Uncontrolled);
        config.building.thermal_resistance = rc;
        config.building.thermal_capacitance = rc;
        config.start_minute = 0;
        config.duration_minutes = 24 * 60;
        let trace = run_scenario(&config)?;
        let mean: Vec<f64> = trace
            .records
            .iter()
            .map(|r| r.temps.iter().sum::<f64>() / r.temps.len() as f64)
            .collect();
        let peak = (0..mean.len())
            .max_by(|&a, &b| mean[a].total_cmp(&mean[b]))
            .unwrap();
        let record = &trace.records[peak];
        println!(
            "R = C = {rc:>4}: warmest at {:02}:{:02}, {:.2} °C mean",
            record.minute / 60,
            record.minute % 60,
            mean[peak]
        );
    }
    Ok(())
}
