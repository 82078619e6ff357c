//! Spread of the setpoint deviations across offices, and windowed means of it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepMeasure {
    pub interval: u64,
    /// Population standard deviation of `T - T_setp` across offices.
    pub stddev: f64,
    /// `<T> - <T_setp>`.
    pub mean_deviation: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard deviation (1/N normalisation) of the per-office setpoint
/// deviations around their mean.
pub fn stddev_deviation(interval: u64, temps: &[f64], setpoints: &[f64]) -> Result<StepMeasure> {
    if temps.is_empty() {
        return Err(Error::NoOffices);
    }
    if temps.len() != setpoints.len() {
        return Err(Error::LengthMismatch {
            what: "setpoints",
            got: setpoints.len(),
            expected: temps.len(),
        });
    }
    let mean_deviation = mean(temps) - mean(setpoints);
    let n = temps.len() as f64;
    let ss: f64 = temps
        .iter()
        .zip(setpoints)
        .map(|(t, s)| {
            let d = (t - s) - mean_deviation;
            d * d
        })
        .sum();
    Ok(StepMeasure {
        interval,
        stddev: (ss / n).sqrt(),
        mean_deviation,
    })
}

/// Mean `stddev` over records with `from <= interval < to`.
pub fn window_mean(measures: &[StepMeasure], from: u64, to: u64) -> Result<f64> {
    if to <= from {
        return Err(Error::EmptyWindow { from, to });
    }
    let (Some(first), Some(last)) = (measures.first(), measures.last()) else {
        return Err(Error::WindowOutOfRange { from, to });
    };
    if from < first.interval || to > last.interval + 1 {
        return Err(Error::WindowOutOfRange { from, to });
    }
    let selected: Vec<f64> = measures
        .iter()
        .filter(|m| (from..to).contains(&m.interval))
        .map(|m| m.stddev)
        .collect();
    if selected.is_empty() {
        return Err(Error::EmptyWindow { from, to });
    }
    Ok(mean(&selected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn hand_values() {
        assert_eq!(
            stddev_deviation(0, &[23.0, 17.5, 20.0], &[23.0, 17.5, 20.0])
                .unwrap()
                .stddev,
            0.0
        );
        assert_abs_diff_eq!(
            stddev_deviation(0, &[21.0, 19.0], &[20.0, 20.0])
                .unwrap()
                .stddev,
            1.0
        );
        let m = stddev_deviation(0, &[22.0, 20.0], &[20.0, 20.0]).unwrap();
        assert_abs_diff_eq!(m.stddev, 1.0);
        assert_abs_diff_eq!(m.mean_deviation, 1.0);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(
            stddev_deviation(0, &[], &[]),
            Err(Error::NoOffices)
        ));
        assert!(stddev_deviation(0, &[1.0], &[]).is_err());
    }

    fn measures(values: &[f64]) -> Vec<StepMeasure> {
        values
            .iter()
            .enumerate()
            .map(|(i, &s)| StepMeasure {
                interval: 900 + i as u64,
                stddev: s,
                mean_deviation: 0.0,
            })
            .collect()
    }

    #[test]
    fn windows() {
        assert_abs_diff_eq!(window_mean(&measures(&[0.5; 10]), 900, 910).unwrap(), 0.5);
        assert_abs_diff_eq!(window_mean(&measures(&[1.0, 3.0]), 900, 902).unwrap(), 2.0);
        assert_abs_diff_eq!(
            window_mean(&measures(&[1.0, 3.0, 8.0]), 901, 902).unwrap(),
            3.0
        );
        assert!(matches!(
            window_mean(&measures(&[1.0]), 900, 900),
            Err(Error::EmptyWindow { .. })
        ));
        assert!(matches!(
            window_mean(&measures(&[1.0]), 899, 901),
            Err(Error::WindowOutOfRange { .. })
        ));
    }

    proptest! {
        #[test]
        fn shift_invariant(
            devs in prop::collection::vec(-5.0f64..5.0, 1..40),
            shift in -50.0f64..50.0,
        ) {
            let sp = vec![20.0; devs.len()];
            let t: Vec<f64> = devs.iter().map(|d| 20.0 + d).collect();
            let shifted: Vec<f64> = t.iter().map(|x| x + shift).collect();
            let a = stddev_deviation(0, &t, &sp).unwrap().stddev;
            let b = stddev_deviation(0, &shifted, &sp).unwrap().stddev;
            prop_assert!((a - b).abs() <= 1e-9);
            prop_assert!(a >= 0.0);
        }

        #[test]
        fn scales_with_deviation(
            devs in prop::collection::vec(-5.0f64..5.0, 1..40),
            k in 0.0f64..10.0,
        ) {
            let sp: Vec<f64> = (0..devs.len()).map(|i| 18.0 + i as f64 * 0.1).collect();
            let t: Vec<f64> = devs.iter().zip(&sp).map(|(d, s)| s + d).collect();
            let scaled: Vec<f64> = devs.iter().zip(&sp).map(|(d, s)| s + k * d).collect();
            let a = stddev_deviation(0, &t, &sp).unwrap().stddev;
            let b = stddev_deviation(0, &scaled, &sp).unwrap().stddev;
            prop_assert!((b - k * a).abs() <= 1e-9 * (1.0 + k));
        }
    }
}
