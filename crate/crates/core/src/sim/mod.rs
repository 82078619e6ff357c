//! Scenario configuration, the run loop and its traces.

mod config;
mod engine;
mod scheme;
mod trace;

pub use config::{PerOffice, RawScenario, ScenarioConfig, SchemeKind, Timing};
pub use engine::{
    interval_span, run_comparison, run_scenario, scheme_rng, sweep, weather_rng, Comparison,
    ComparisonEntry, SweepParam, SweepPoint,
};
pub use trace::{SimTrace, StepRecord};
