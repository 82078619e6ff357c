//! Command-line front end: `run`, `compare` and `sweep`.
//!
//! A scenario starts from the JSON file given with `--config` (or the
//! defaults) and individual flags override the file.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::building::ResourceInput;
use crate::error::{Error, Result};
use crate::output;
use crate::sim::{
    run_comparison, run_scenario, sweep, PerOffice, RawScenario, ScenarioConfig, SchemeKind,
    SweepParam, Timing,
};

#[derive(Debug, Parser)]
#[command(name = "climsim", version, about = "Office climate control simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario and write its trace.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write the resolved configuration as JSON.
        #[arg(long, value_name = "PATH")]
        config_out: Option<PathBuf>,
    },
    /// Run several schemes on the same weather and compare their spread.
    Compare {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Schemes to compare; all of them when omitted.
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        schemes: Vec<SchemeKind>,
    },
    /// Vary one parameter of a scenario.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        param: SweepParam,
        /// Comma-separated values; `unlimited` is accepted for `resource`.
        #[arg(long, value_delimiter = ',', required = true, value_name = "LIST")]
        values: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// JSON configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Pipe head power, or `unlimited`.
    #[arg(long, value_name = "VALUE|unlimited")]
    pub resource: Option<ResourceInput>,
    #[arg(long)]
    pub offices: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub start_minute: Option<u64>,
    /// Length of the run in minutes.
    #[arg(long)]
    pub duration: Option<u64>,
    /// Setpoint for every office.
    #[arg(long)]
    pub setpoint: Option<f64>,
    #[arg(long)]
    pub initial_temperature: Option<f64>,
    #[arg(long)]
    pub initial_control: Option<f64>,
    #[arg(long)]
    pub timing: Option<Timing>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file for `run`, output directory otherwise. `run` prints to
    /// stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Add one temperature column per office.
    #[arg(long)]
    pub per_office: bool,
}

impl ScenarioArgs {
    /// The configuration file with the flags applied on top.
    pub fn to_config(&self) -> Result<ScenarioConfig> {
        let mut raw = match &self.config {
            Some(path) => RawScenario::from_json(&fs::read_to_string(path)?)?,
            None => RawScenario::default(),
        };
        if let Some(s) = &self.scheme {
            raw.scheme = s.clone();
        }
        if let Some(a) = self.alpha {
            raw.alpha = Some(a);
        }
        if let Some(b) = self.beta {
            raw.beta = b;
        }
        if let Some(r) = self.resource {
            raw.building.resource = r;
        }
        if let Some(n) = self.offices {
            raw.building.offices = n;
        }
        if let Some(s) = self.seed {
            raw.seed = s;
        }
        if let Some(m) = self.start_minute {
            raw.start_minute = m;
        }
        if let Some(d) = self.duration {
            raw.duration = d;
        }
        if let Some(sp) = self.setpoint {
            raw.setpoints = PerOffice::Uniform(sp);
        }
        if let Some(t) = self.initial_temperature {
            raw.initial_temperature = PerOffice::Uniform(t);
        }
        if let Some(f) = self.initial_control {
            raw.initial_control = PerOffice::Uniform(f);
        }
        if let Some(t) = self.timing {
            raw.timing = t;
        }
        raw.resolve()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Run(#[from] Error),
}

fn parse_value(param: SweepParam, text: &str) -> Result<f64> {
    if param == SweepParam::Resource && text.trim().eq_ignore_ascii_case("unlimited") {
        return Ok(f64::INFINITY);
    }
    text.trim().parse().map_err(|_| Error::InvalidConfig {
        key: "values".into(),
        message: format!("`{text}` is not a number"),
    })
}

/// Parses `args` (program name first) and executes the command, writing
/// anything not sent to a file to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> std::result::Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(cli.command, stdout)?;
    Ok(())
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Run {
            scenario,
            output,
            config_out,
        } => {
            let config = scenario.to_config()?;
            if let Some(path) = config_out {
                fs::write(path, config.to_json()?)?;
            }
            let trace = run_scenario(&config)?;
            match output.out {
                Some(path) => output::write_trace(&path, &trace, output.per_office)?,
                None => {
                    stdout.write_all(output::trace_csv(&trace, output.per_office).as_bytes())?
                }
            }
        }
        Command::Compare {
            scenario,
            output,
            schemes,
        } => {
            let base = scenario.to_config()?;
            let schemes = if schemes.is_empty() {
                SchemeKind::ALL.to_vec()
            } else {
                schemes
            };
            let configs: Vec<ScenarioConfig> = schemes
                .into_iter()
                .map(|scheme| ScenarioConfig {
                    scheme,
                    ..base.clone()
                })
                .collect();
            let comparison = run_comparison(&configs)?;
            if let Some(dir) = output.out {
                output::write_comparison(&dir, &comparison, output.per_office)?;
            }
            stdout.write_all(output::comparison_summary_csv(&comparison).as_bytes())?;
        }
        Command::Sweep {
            scenario,
            output,
            param,
            values,
        } => {
            let base = scenario.to_config()?;
            let values = values
                .iter()
                .map(|v| parse_value(param, v))
                .collect::<Result<Vec<_>>>()?;
            let points = sweep(&base, param, &values)?;
            if let Some(dir) = output.out {
                output::write_sweep(&dir, param, &points, output.per_office)?;
            }
            stdout.write_all(output::sweep_summary_csv(param, &points).as_bytes())?;
        }
    }
    Ok(())
}

/// Entry point of the `climsim` binary.
pub fn main() -> ExitCode {
    match run(std::env::args_os(), &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
