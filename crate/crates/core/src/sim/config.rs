use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::building::{BuildingParams, RawBuilding};
use crate::error::{Error, Result};
use crate::market_eq::DEFAULT_EPS;
use crate::market_hc::HcVariant;

/// Allocation scheme driving the control signals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    Uncontrolled,
    ControlA,
    ControlB,
    MarketA,
    MarketANoMoney,
    MarketANoTemperature,
    MarketANoAuction,
    MarketBUnbounded,
    MarketBBounded,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 9] = [
        SchemeKind::Uncontrolled,
        SchemeKind::ControlA,
        SchemeKind::ControlB,
        SchemeKind::MarketA,
        SchemeKind::MarketANoMoney,
        SchemeKind::MarketANoTemperature,
        SchemeKind::MarketANoAuction,
        SchemeKind::MarketBUnbounded,
        SchemeKind::MarketBBounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Uncontrolled => "uncontrolled",
            SchemeKind::ControlA => "control-a",
            SchemeKind::ControlB => "control-b",
            SchemeKind::MarketA => "market-a",
            SchemeKind::MarketANoMoney => "market-a-no-money",
            SchemeKind::MarketANoTemperature => "market-a-no-temperature",
            SchemeKind::MarketANoAuction => "market-a-no-auction",
            SchemeKind::MarketBUnbounded => "market-b-unbounded",
            SchemeKind::MarketBBounded => "market-b-bounded",
        }
    }

    /// Stable small integer used to derive the scheme's random stream.
    pub fn id(self) -> u64 {
        Self::ALL.iter().position(|&s| s == self).unwrap() as u64
    }

    pub fn hc_variant(self) -> Option<HcVariant> {
        match self {
            SchemeKind::MarketA => Some(HcVariant::Original),
            SchemeKind::MarketANoMoney => Some(HcVariant::NoMoney),
            SchemeKind::MarketANoTemperature => Some(HcVariant::NoTemperature),
            SchemeKind::MarketANoAuction => Some(HcVariant::NoAuction),
            _ => None,
        }
    }

    pub fn default_alpha(self) -> Option<f64> {
        self.hc_variant().map(HcVariant::default_alpha)
    }

    pub fn is_market(self) -> bool {
        matches!(
            self,
            SchemeKind::MarketA
                | SchemeKind::MarketANoMoney
                | SchemeKind::MarketANoTemperature
                | SchemeKind::MarketANoAuction
                | SchemeKind::MarketBUnbounded
                | SchemeKind::MarketBBounded
        )
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| {
                let names: Vec<&str> = SchemeKind::ALL.iter().map(|k| k.name()).collect();
                Error::config(
                    "scheme",
                    format!("unknown scheme `{s}`; expected one of {}", names.join(", ")),
                )
            })
    }
}

/// When a feedback law reads the office temperatures it acts on.
///
/// `Simultaneous` solves the control law together with the thermal step of
/// the same interval, so the controller sees the temperature its own action
/// produces. `Delayed` feeds the law the previous interval's temperatures.
/// The office market and its ablations always act on the previous
/// interval's readings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Timing {
    #[default]
    Simultaneous,
    Delayed,
}

impl FromStr for Timing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simultaneous" => Ok(Timing::Simultaneous),
            "delayed" => Ok(Timing::Delayed),
            _ => Err(Error::config(
                "timing",
                format!("expected `simultaneous` or `delayed`, got `{s}`"),
            )),
        }
    }
}

/// A value given once for every office, or per office.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerOffice {
    Uniform(f64),
    Each(Vec<f64>),
}

impl PerOffice {
    fn resolve(&self, key: &str, n: usize) -> Result<Vec<f64>> {
        let values = match self {
            PerOffice::Uniform(v) => vec![*v; n],
            PerOffice::Each(vs) if vs.len() == n => vs.clone(),
            PerOffice::Each(vs) => {
                return Err(Error::config(
                    key,
                    format!("expected {n} entries, got {}", vs.len()),
                ));
            }
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::config(key, "values must be finite"));
        }
        Ok(values)
    }
}

/// One fully resolved scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct ScenarioConfig {
    pub scheme: SchemeKind,
    pub building: BuildingParams,
    pub beta: f64,
    /// Volume scale for the Huberman-Clearwater schemes; `None` selects the
    /// scheme's default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Minutes since midnight of the first interval.
    pub start_minute: u64,
    #[serde(rename = "duration")]
    pub duration_minutes: u64,
    pub initial_temperature: Vec<f64>,
    pub initial_control: Vec<f64>,
    pub setpoints: Vec<f64>,
    pub seed: u64,
    pub eps: f64,
    pub timing: Timing,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        RawScenario::default()
            .resolve()
            .expect("defaults are valid")
    }
}

impl ScenarioConfig {
    pub fn new(scheme: SchemeKind) -> Self {
        ScenarioConfig {
            scheme,
            ..Default::default()
        }
    }

    /// Parses a JSON configuration; missing keys take their defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        RawScenario::from_json(text)?.resolve()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn effective_alpha(&self) -> Option<f64> {
        self.alpha.or(self.scheme.default_alpha())
    }

    pub fn end_minute(&self) -> u64 {
        self.start_minute + self.duration_minutes
    }

    pub fn validate(&self) -> Result<()> {
        self.building.validate()?;
        let n = self.building.n_offices;
        if self.duration_minutes == 0 {
            return Err(Error::config("duration", "must be at least 1"));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::config("beta", "must be positive"));
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::config("alpha", "must be positive"));
            }
        }
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::config("eps", "must be positive"));
        }
        for (key, xs) in [
            ("initial_temperature", &self.initial_temperature),
            ("initial_control", &self.initial_control),
            ("setpoints", &self.setpoints),
        ] {
            if xs.len() != n {
                return Err(Error::config(
                    key,
                    format!("expected {n} entries, got {}", xs.len()),
                ));
            }
            if xs.iter().any(|x| !x.is_finite()) {
                return Err(Error::config(key, "values must be finite"));
            }
        }
        let (lo, hi) = (self.building.f_min, self.building.f_max);
        if self.initial_control.iter().any(|f| !(lo..=hi).contains(f)) {
            return Err(Error::config(
                "initial_control",
                format!("values must lie in [{lo}, {hi}]"),
            ));
        }
        Ok(())
    }
}

/// Configuration as written in a file, before defaults are expanded to one
/// value per office.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawScenario {
    pub scheme: String,
    pub building: RawBuilding,
    pub beta: f64,
    pub alpha: Option<f64>,
    pub start_minute: u64,
    pub duration: u64,
    pub initial_temperature: PerOffice,
    pub initial_control: PerOffice,
    #[serde(alias = "setpoint")]
    pub setpoints: PerOffice,
    pub seed: u64,
    pub eps: f64,
    pub timing: Timing,
}

impl Default for RawScenario {
    fn default() -> Self {
        RawScenario {
            scheme: SchemeKind::ControlA.name().into(),
            building: RawBuilding::default(),
            beta: 10.0,
            alpha: None,
            start_minute: 15 * 60,
            duration: 240,
            initial_temperature: PerOffice::Uniform(20.0),
            initial_control: PerOffice::Uniform(0.0),
            setpoints: PerOffice::Uniform(20.0),
            seed: 0,
            eps: DEFAULT_EPS,
            timing: Timing::default(),
        }
    }
}

impl RawScenario {
    pub fn from_json(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(RawScenario::default());
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(self) -> Result<ScenarioConfig> {
        let scheme: SchemeKind = self.scheme.parse()?;
        let building = BuildingParams::try_from(self.building)?;
        let n = building.n_offices;
        let config = ScenarioConfig {
            scheme,
            building,
            beta: self.beta,
            alpha: self.alpha,
            start_minute: self.start_minute,
            duration_minutes: self.duration,
            initial_temperature: self.initial_temperature.resolve("initial_temperature", n)?,
            initial_control: self.initial_control.resolve("initial_control", n)?,
            setpoints: self.setpoints.resolve("setpoints", n)?,
            seed: self.seed,
            eps: self.eps,
            timing: self.timing,
        };
        config.validate()?;
        Ok(config)
    }
}

impl TryFrom<RawScenario> for ScenarioConfig {
    type Error = Error;

    fn try_from(raw: RawScenario) -> Result<Self> {
        raw.resolve()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::ResourceInput;

    #[test]
    fn empty_config_is_all_defaults() {
        for text in ["", "{}"] {
            let c = ScenarioConfig::from_json(text).unwrap();
            assert_eq!(c.building.n_offices, 100);
            assert_eq!(c.building.eta, 0.5);
            assert_eq!(
                (
                    c.building.thermal_resistance,
                    c.building.thermal_capacitance
                ),
                (10.0, 10.0)
            );
            assert_eq!(c.building.resource_input, ResourceInput::Limited(140.0));
            assert_eq!(c.beta, 10.0);
            assert_eq!((c.start_minute, c.duration_minutes), (900, 240));
            assert!(c.setpoints.iter().all(|&s| s == 20.0));
            assert!(c.initial_temperature.iter().all(|&s| s == 20.0));
            assert_eq!(c.seed, 0);
            assert_eq!(c.timing, Timing::Simultaneous);
        }
    }

    #[test]
    fn scheme_alphas() {
        assert_eq!(
            ScenarioConfig::new(SchemeKind::MarketA).effective_alpha(),
            Some(64.0)
        );
        assert_eq!(
            ScenarioConfig::new(SchemeKind::MarketANoMoney).effective_alpha(),
            Some(66.0)
        );
        assert_eq!(
            ScenarioConfig::new(SchemeKind::MarketANoTemperature).effective_alpha(),
            Some(65.0)
        );
        assert_eq!(
            ScenarioConfig::new(SchemeKind::MarketANoAuction).effective_alpha(),
            Some(17.0)
        );
        assert_eq!(
            ScenarioConfig::new(SchemeKind::ControlB).effective_alpha(),
            None
        );
    }

    #[test]
    fn scheme_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.name().parse::<SchemeKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(json, format!("\"{}\"", k.name()));
        }
        assert_eq!(
            "MARKET_B_BOUNDED".parse::<SchemeKind>().unwrap(),
            SchemeKind::MarketBBounded
        );
    }

    #[test]
    fn errors_name_the_key() {
        let err = ScenarioConfig::from_json(r#"{"scheme": "market-z"}"#).unwrap_err();
        assert!(err.to_string().contains("`scheme`"), "{err}");
        let err = ScenarioConfig::from_json(r#"{"bogus": 1}"#).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = ScenarioConfig::from_json(r#"{"building": {"eta": 2}}"#).unwrap_err();
        assert!(err.to_string().contains("eta"), "{err}");
        let err = ScenarioConfig::from_json(r#"{"duration": 0}"#).unwrap_err();
        assert!(err.to_string().contains("duration"), "{err}");
        let err = ScenarioConfig::from_json(r#"{"setpoints": [20, 21]}"#).unwrap_err();
        assert!(err.to_string().contains("setpoints"), "{err}");
    }

    #[test]
    fn echo_round_trips() {
        let mut c = ScenarioConfig::new(SchemeKind::MarketANoTemperature);
        c.alpha = Some(12.5);
        c.building.resource_input = ResourceInput::Unlimited;
        c.setpoints[3] = 22.0;
        c.timing = Timing::Delayed;
        let back = ScenarioConfig::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
        let d = ScenarioConfig::default();
        assert_eq!(ScenarioConfig::from_json(&d.to_json().unwrap()).unwrap(), d);
    }

    #[test]
    fn per_office_lists() {
        let c = ScenarioConfig::from_json(
            r#"{"building": {"offices": 2, "resource": "unlimited"}, "setpoint": [19.0, 21.0]}"#,
        )
        .unwrap();
        assert_eq!(c.setpoints, vec![19.0, 21.0]);
        assert_eq!(c.building.resource_input, ResourceInput::Unlimited);
    }
}
