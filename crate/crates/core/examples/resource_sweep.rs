//! Local integrating control gets worse as the pipe carries less cooling.

use climate_market::sim::{sweep, ScenarioConfig, SchemeKind, SweepParam};

fn main() -> climate_market::Result<()> {
    let base = ScenarioConfig::new(SchemeKind::ControlA);
    for point in sweep(
        &base,
        SweepParam::Resource,
        &[130.0, 140.0, 150.0, 160.0, f64::INFINITY],
    )? {
        println!(
            "resource {:>9}: mean stddev {:.4}",
            point.value, point.window_mean
        );
    }
    Ok(())
}
