//! Outdoor temperature and sun load over one day, hour by hour.

use climate_market::building::{outdoor_temp, sun_component, Orientation};

fn main() {
    let step_hours = 1.0 / 60.0;
    println!(
        "{:>5} {:>8} {:>7} {:>7} {:>7} {:>7}",
        "hour", "outdoor", "east", "south", "west", "north"
    );
    for hour in 0..24u64 {
        let i = hour * 60;
        let sun = Orientation::ALL.map(|o| sun_component(o, i, step_hours));
        println!(
            "{:>5} {:>8.3} {:>7.3} {:>7.3} {:>7.3} {:>7.3}",
            hour,
            outdoor_temp(i, step_hours),
            sun[0],
            sun[1],
            sun[2],
            sun[3]
        );
    }
}
