use serde::Serialize;

use crate::error::Result;
use crate::metrics::{window_mean, StepMeasure};

use super::config::ScenarioConfig;

/// State of the building at the end of one interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub interval: u64,
    /// Minutes since midnight of the first day at the start of the interval.
    pub minute: u64,
    pub temps: Vec<f64>,
    pub controls: Vec<f64>,
    pub consumed: Vec<f64>,
    /// Clearing price; `None` for controllers and rounds without trade.
    pub price: Option<f64>,
    pub measure: StepMeasure,
}

/// Everything a run produced, with the configuration that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimTrace {
    pub config: ScenarioConfig,
    pub version: String,
    pub records: Vec<StepRecord>,
}

impl SimTrace {
    pub(crate) fn new(config: ScenarioConfig) -> Self {
        SimTrace {
            config,
            version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn measures(&self) -> Vec<StepMeasure> {
        self.records.iter().map(|r| r.measure).collect()
    }

    /// Mean spread over the whole run.
    pub fn window_mean(&self) -> Result<f64> {
        let (from, to) = match (self.records.first(), self.records.last()) {
            (Some(a), Some(b)) => (a.interval, b.interval + 1),
            _ => (0, 0),
        };
        window_mean(&self.measures(), from, to)
    }

    /// Mean spread over intervals `from..to`.
    pub fn window_mean_between(&self, from: u64, to: u64) -> Result<f64> {
        window_mean(&self.measures(), from, to)
    }

    /// Largest `|T - T_setp|` over all offices in records at or after
    /// `from_interval`.
    pub fn max_abs_deviation(&self, from_interval: u64) -> f64 {
        self.records
            .iter()
            .filter(|r| r.interval >= from_interval)
            .flat_map(|r| {
                r.temps
                    .iter()
                    .zip(&self.config.setpoints)
                    .map(|(t, s)| (t - s).abs())
            })
            .fold(0.0, f64::max)
    }
}
