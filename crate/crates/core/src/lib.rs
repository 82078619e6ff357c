//! Simulation of a building's climate control in which offices share one
//! cold-air pipe. Compares local and globally corrected integrating
//! controllers with a sealed-bid office market, its ablations, and an
//! equilibrium market over control-signal changes.

pub mod building;
pub mod cli;
pub mod controllers;
pub mod error;
pub mod market_eq;
pub mod market_hc;
pub mod metrics;
pub mod output;
pub mod roots;
pub mod sim;
pub mod snapshot;

pub use building::{BuildingParams, Orientation, ResourceInput};
pub use error::{Error, Result};
pub use metrics::StepMeasure;
pub use sim::{run_comparison, run_scenario, ScenarioConfig, SchemeKind, SimTrace, Timing};
pub use snapshot::Snapshot;
