use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::building::{sample_weather, ResourceInput};
use crate::error::{Error, Result};
use crate::metrics::stddev_deviation;

use super::config::{ScenarioConfig, SchemeKind};
use super::scheme::{SchemeRunner, StepInput};
use super::trace::{SimTrace, StepRecord};

/// Generator for the weather fluctuations. Depends on the seed only, so every
/// scheme run with the same seed sees the same weather.
pub fn weather_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

/// Generator for a scheme's own randomness (auction rationing): same key as
/// the weather, stream `1 + scheme id`.
pub fn scheme_rng(seed: u64, scheme: SchemeKind) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 + scheme.id());
    rng
}

/// Index of the first interval and the number of intervals in the run.
pub fn interval_span(config: &ScenarioConfig) -> (u64, u64) {
    let step_minutes = config.building.step_hours * 60.0;
    let first = (config.start_minute as f64 / step_minutes).round() as u64;
    let count = ((config.duration_minutes as f64 / step_minutes).round() as u64).max(1);
    (first, count)
}

fn minute(interval: u64, step_hours: f64) -> u64 {
    (interval as f64 * step_hours * 60.0).round() as u64
}

/// Runs one scenario: weather, scheme decision, pipe, thermal step and
/// measurement for every interval.
pub fn run_scenario(config: &ScenarioConfig) -> Result<SimTrace> {
    config.validate()?;
    let b = &config.building;
    let (first, count) = interval_span(config);
    let mut weather = weather_rng(config.seed);
    let mut runner = SchemeRunner::new(config, scheme_rng(config.seed, config.scheme));

    let mut temps = config.initial_temperature.clone();
    let mut controls = config.initial_control.clone();
    let mut trace = SimTrace::new(config.clone());
    trace.records.reserve(count as usize);

    for interval in first..first + count {
        let sample = sample_weather(b, interval, &mut weather);
        let input = StepInput {
            building: b,
            prev_temps: &temps,
            prev_controls: &controls,
            setpoints: &config.setpoints,
            virtual_temps: &sample.virtual_temp,
        };
        let out = runner.step(&input).map_err(|e| Error::Scheme {
            interval,
            source: Box::new(e),
        })?;
        let measure = stddev_deviation(interval, &out.temps, &config.setpoints)?;
        temps.clone_from(&out.temps);
        controls.clone_from(&out.controls);
        trace.records.push(StepRecord {
            interval,
            minute: minute(interval, b.step_hours),
            temps: out.temps,
            controls: out.controls,
            consumed: out.consumed,
            price: out.price,
            measure,
        });
    }
    Ok(trace)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonEntry {
    pub scheme: SchemeKind,
    pub window_mean: f64,
    pub trace: SimTrace,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Comparison {
    pub entries: Vec<ComparisonEntry>,
}

impl Comparison {
    pub fn get(&self, scheme: SchemeKind) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|e| e.scheme == scheme)
    }

    /// Window mean of `scheme`, if it took part.
    pub fn window_mean(&self, scheme: SchemeKind) -> Option<f64> {
        self.get(scheme).map(|e| e.window_mean)
    }
}

fn check_comparable(configs: &[ScenarioConfig]) -> Result<()> {
    let Some(first) = configs.first() else {
        return Err(Error::MismatchedScenarios("no scenarios given".into()));
    };
    for c in &configs[1..] {
        let mismatch = if c.building != first.building {
            Some("building")
        } else if c.seed != first.seed {
            Some("seed")
        } else if (c.start_minute, c.duration_minutes)
            != (first.start_minute, first.duration_minutes)
        {
            Some("time window")
        } else if c.setpoints != first.setpoints {
            Some("setpoints")
        } else if c.initial_temperature != first.initial_temperature {
            Some("initial temperatures")
        } else {
            None
        };
        if let Some(what) = mismatch {
            return Err(Error::MismatchedScenarios(format!(
                "{} differs between {} and {}",
                what, first.scheme, c.scheme
            )));
        }
    }
    Ok(())
}

/// Runs scenarios that share building, seed, window and setpoints, one
/// thread each, and reports their window-mean spread in input order.
pub fn run_comparison(configs: &[ScenarioConfig]) -> Result<Comparison> {
    check_comparable(configs)?;
    let traces = run_all(configs)?;
    let entries = traces
        .into_iter()
        .map(|trace| {
            Ok(ComparisonEntry {
                scheme: trace.config.scheme,
                window_mean: trace.window_mean()?,
                trace,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Comparison { entries })
}

fn run_all(configs: &[ScenarioConfig]) -> Result<Vec<SimTrace>> {
    thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| s.spawn(move || run_scenario(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    })
}

/// Parameter varied by [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    /// Pipe head power; an infinite value selects the unlimited pipe.
    Resource,
    Alpha,
    Beta,
    Seed,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Resource => "resource",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Seed => "seed",
        }
    }

    /// `base` with this parameter set to `value`.
    pub fn apply(self, base: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut c = base.clone();
        match self {
            SweepParam::Resource if value == f64::INFINITY => {
                c.building.resource_input = ResourceInput::Unlimited
            }
            SweepParam::Resource => c.building.resource_input = format!("{value}").parse()?,
            SweepParam::Alpha => c.alpha = Some(value),
            SweepParam::Beta => c.beta = value,
            SweepParam::Seed
                if value >= 0.0 && value.fract() == 0.0 && value <= u64::MAX as f64 =>
            {
                c.seed = value as u64
            }
            SweepParam::Seed => {
                return Err(Error::config(
                    "seed",
                    format!("must be a non-negative integer, got {value}"),
                ))
            }
        }
        c.validate()?;
        Ok(c)
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "resource" => Ok(SweepParam::Resource),
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            "seed" => Ok(SweepParam::Seed),
            _ => Err(Error::config(
                "param",
                format!("expected resource, alpha, beta or seed, got `{s}`"),
            )),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub window_mean: f64,
    pub trace: SimTrace,
}

/// Runs `base` once per value of `param`, in parallel.
pub fn sweep(base: &ScenarioConfig, param: SweepParam, values: &[f64]) -> Result<Vec<SweepPoint>> {
    let configs = values
        .iter()
        .map(|&v| param.apply(base, v))
        .collect::<Result<Vec<_>>>()?;
    let traces = run_all(&configs)?;
    values
        .iter()
        .zip(traces)
        .map(|(&value, trace)| {
            Ok(SweepPoint {
                value,
                window_mean: trace.window_mean()?,
                trace,
            })
        })
        .collect()
}
