//! CSV emission. Numbers are written with nine significant digits in
//! scientific notation so a trace always serialises to the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::sim::{Comparison, SimTrace, SweepParam, SweepPoint};

pub const SUMMARY_FILE: &str = "summary.csv";

fn num(x: f64) -> String {
    format!("{x:.8e}")
}

/// One row per interval: `minute,scheme,stddev,mean_deviation,price`, plus
/// `T_<office>` columns when `per_office` is set.
pub fn trace_csv(trace: &SimTrace, per_office: bool) -> String {
    let mut out = String::from("minute,scheme,stddev,mean_deviation,price");
    if per_office {
        for o in 0..trace.config.building.n_offices {
            write!(out, ",T_{o}").unwrap();
        }
    }
    out.push('\n');
    let scheme = trace.config.scheme.name();
    for r in &trace.records {
        let price = r.price.map(num).unwrap_or_default();
        write!(
            out,
            "{},{},{},{},{}",
            r.minute,
            scheme,
            num(r.measure.stddev),
            num(r.measure.mean_deviation),
            price
        )
        .unwrap();
        if per_office {
            for t in &r.temps {
                write!(out, ",{}", num(*t)).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// `scheme,window_mean_stddev`, one row per compared scheme.
pub fn comparison_summary_csv(comparison: &Comparison) -> String {
    let mut out = String::from("scheme,window_mean_stddev\n");
    for e in &comparison.entries {
        writeln!(out, "{},{}", e.scheme.name(), num(e.window_mean)).unwrap();
    }
    out
}

/// `<param>,window_mean_stddev`, one row per swept value.
pub fn sweep_summary_csv(param: SweepParam, points: &[SweepPoint]) -> String {
    let mut out = format!("{},window_mean_stddev\n", param.name());
    for p in points {
        writeln!(out, "{},{}", value_label(p.value), num(p.window_mean)).unwrap();
    }
    out
}

fn value_label(v: f64) -> String {
    if v == f64::INFINITY {
        "unlimited".into()
    } else {
        format!("{v}")
    }
}

pub fn write_trace(path: &Path, trace: &SimTrace, per_office: bool) -> Result<()> {
    fs::write(path, trace_csv(trace, per_office))?;
    Ok(())
}

/// Writes the summary and one `<scheme>.csv` trace per scheme into `dir`,
/// creating it if needed. Returns the paths written, summary first.
pub fn write_comparison(
    dir: &Path,
    comparison: &Comparison,
    per_office: bool,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let summary = dir.join(SUMMARY_FILE);
    fs::write(&summary, comparison_summary_csv(comparison))?;
    let mut written = vec![summary];
    for e in &comparison.entries {
        let path = dir.join(format!("{}.csv", e.scheme.name()));
        write_trace(&path, &e.trace, per_office)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the summary and one `<param>_<value>.csv` trace per point.
pub fn write_sweep(
    dir: &Path,
    param: SweepParam,
    points: &[SweepPoint],
    per_office: bool,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let summary = dir.join(SUMMARY_FILE);
    fs::write(&summary, sweep_summary_csv(param, points))?;
    let mut written = vec![summary];
    for p in points {
        let path = dir.join(format!("{}_{}.csv", param.name(), value_label(p.value)));
        write_trace(&path, &p.trace, per_office)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run_comparison, run_scenario, ScenarioConfig, SchemeKind};

    fn short(scheme: SchemeKind) -> ScenarioConfig {
        let mut c = ScenarioConfig::new(scheme);
        c.building = crate::building::BuildingParams::with_offices(8);
        c.initial_temperature = vec![20.0; 8];
        c.initial_control = vec![0.0; 8];
        c.setpoints = vec![20.0; 8];
        c.duration_minutes = 5;
        c
    }

    #[test]
    fn number_format_is_fixed() {
        assert_eq!(num(0.0), "0.00000000e0");
        assert_eq!(num(1367.6611040916684), "1.36766110e3");
        assert_eq!(num(-0.00123456789), "-1.23456789e-3");
    }

    #[test]
    fn trace_rows_and_columns() {
        let trace = run_scenario(&short(SchemeKind::MarketA)).unwrap();
        let text = trace_csv(&trace, false);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "minute,scheme,stddev,mean_deviation,price");
        assert!(lines[1].starts_with("900,market-a,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 5));

        let wide = trace_csv(&trace, true);
        let header = wide.lines().next().unwrap();
        assert!(header.ends_with(",T_6,T_7"));
        assert!(wide.lines().all(|l| l.split(',').count() == 13));
    }

    #[test]
    fn controller_price_column_is_empty() {
        let trace = run_scenario(&short(SchemeKind::ControlA)).unwrap();
        for line in trace_csv(&trace, false).lines().skip(1) {
            assert!(line.ends_with(','), "{line}");
        }
    }

    /// Golden layout of the comparison summary.
    #[test]
    fn comparison_summary_layout() {
        let comparison =
            run_comparison(&[short(SchemeKind::ControlA), short(SchemeKind::ControlB)]).unwrap();
        let text = comparison_summary_csv(&comparison);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "scheme,window_mean_stddev");
        assert!(lines[1].starts_with("control-a,"));
        assert!(lines[2].starts_with("control-b,"));
        let value = lines[1].split(',').nth(1).unwrap();
        assert_eq!(value, num(comparison.entries[0].window_mean));

        let dir = tempfile::tempdir().unwrap();
        let written = write_comparison(dir.path(), &comparison, false).unwrap();
        let names: Vec<String> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(names, ["summary.csv", "control-a.csv", "control-b.csv"]);
    }
}
