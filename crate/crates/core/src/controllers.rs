//! Integrating controllers: purely local, and corrected by the building-wide
//! average deviation.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControllerParams {
    pub gain: f64,
    pub f_min: f64,
    pub f_max: f64,
}

impl Default for ControllerParams {
    fn default() -> Self {
        ControllerParams {
            gain: 10.0,
            f_min: 0.0,
            f_max: 3.0,
        }
    }
}

impl ControllerParams {
    pub fn clamp(&self, f: f64) -> f64 {
        f.clamp(self.f_min, self.f_max)
    }
}

/// Local integrating update: `F + gain * (T - T_setp)`, clamped.
pub fn control_a_update(f_prev: f64, temp: f64, setpoint: f64, params: &ControllerParams) -> f64 {
    params.clamp(f_prev + params.gain * (temp - setpoint))
}

/// The unclamped increment of [`control_b_update`].
pub fn control_b_increment(
    temp: f64,
    setpoint: f64,
    mean_temp: f64,
    mean_setpoint: f64,
    gain: f64,
) -> f64 {
    gain * ((temp - setpoint) - (mean_temp - mean_setpoint))
}

/// Integrating update on the office's deviation relative to the average
/// deviation of all offices, clamped.
pub fn control_b_update(
    f_prev: f64,
    temp: f64,
    setpoint: f64,
    mean_temp: f64,
    mean_setpoint: f64,
    params: &ControllerParams,
) -> f64 {
    params
        .clamp(f_prev + control_b_increment(temp, setpoint, mean_temp, mean_setpoint, params.gain))
}
