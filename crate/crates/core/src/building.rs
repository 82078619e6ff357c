//! Office environment physics: the weather model, the per-office RC thermal
//! step and the cold-air pipe that turns control signals into consumed power.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The side of the building an office faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    East,
    South,
    West,
    North,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::East,
        Orientation::South,
        Orientation::West,
        Orientation::North,
    ];

    fn index(self) -> usize {
        match self {
            Orientation::East => 0,
            Orientation::South => 1,
            Orientation::West => 2,
            Orientation::North => 3,
        }
    }
}

/// Total cooling power inserted at the head of the pipe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ResourceRepr", into = "ResourceRepr")]
pub enum ResourceInput {
    Unlimited,
    Limited(f64),
}

impl ResourceInput {
    /// Power available at the pipe head; `+inf` when unlimited.
    pub fn head(self) -> f64 {
        match self {
            ResourceInput::Unlimited => f64::INFINITY,
            ResourceInput::Limited(v) => v,
        }
    }
}

impl std::str::FromStr for ResourceInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("unlimited") {
            return Ok(ResourceInput::Unlimited);
        }
        let value: f64 = s.parse().map_err(|_| {
            Error::config(
                "resource",
                format!("expected a number or `unlimited`, got `{s}`"),
            )
        })?;
        ResourceRepr::Amount(value).try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ResourceRepr {
    Amount(f64),
    Keyword(String),
}

impl TryFrom<ResourceRepr> for ResourceInput {
    type Error = Error;

    fn try_from(repr: ResourceRepr) -> Result<Self> {
        match repr {
            ResourceRepr::Amount(v) if v.is_finite() && v >= 0.0 => Ok(ResourceInput::Limited(v)),
            ResourceRepr::Amount(v) => Err(Error::config(
                "resource",
                format!("must be finite and non-negative, got {v}"),
            )),
            ResourceRepr::Keyword(k) if k.eq_ignore_ascii_case("unlimited") => {
                Ok(ResourceInput::Unlimited)
            }
            ResourceRepr::Keyword(k) => Err(Error::config(
                "resource",
                format!("expected a number or `unlimited`, got `{k}`"),
            )),
        }
    }
}

impl From<ResourceInput> for ResourceRepr {
    fn from(r: ResourceInput) -> Self {
        match r {
            ResourceInput::Unlimited => ResourceRepr::Keyword("unlimited".into()),
            ResourceInput::Limited(v) => ResourceRepr::Amount(v),
        }
    }
}

/// Static physical and topological parameters of the building.
///
/// Offices are indexed `0..n_offices`. `orientations[o]` is the facing of
/// office `o`; `pipe_order[k]` is the office at position `k` along the air
/// pipe, counted from the head.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBuilding")]
pub struct BuildingParams {
    #[serde(rename = "offices")]
    pub n_offices: usize,
    pub eta: f64,
    #[serde(rename = "resistance")]
    pub thermal_resistance: f64,
    #[serde(rename = "capacitance")]
    pub thermal_capacitance: f64,
    pub f_min: f64,
    pub f_max: f64,
    #[serde(rename = "resource")]
    pub resource_input: ResourceInput,
    pub step_hours: f64,
    pub orientations: Vec<Orientation>,
    pub pipe_order: Vec<usize>,
}

impl Default for BuildingParams {
    fn default() -> Self {
        Self::with_offices(100)
    }
}

impl BuildingParams {
    /// Default parameters for `n` offices: equal contiguous East, South,
    /// West and North blocks, piped in index order.
    pub fn with_offices(n: usize) -> Self {
        BuildingParams {
            n_offices: n,
            eta: 0.5,
            thermal_resistance: 10.0,
            thermal_capacitance: 10.0,
            f_min: 0.0,
            f_max: 3.0,
            resource_input: ResourceInput::Limited(140.0),
            step_hours: 1.0 / 60.0,
            orientations: default_orientations(n),
            pipe_order: (0..n).collect(),
        }
    }

    pub fn orientation(&self, office: usize) -> Orientation {
        self.orientations[office]
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_offices == 0 {
            return Err(Error::config("offices", "must be at least 1"));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::config(
                "eta",
                format!("must lie in (0, 1], got {}", self.eta),
            ));
        }
        if !(self.thermal_resistance > 0.0 && self.thermal_resistance.is_finite()) {
            return Err(Error::config("resistance", "must be positive"));
        }
        if !(self.thermal_capacitance > 0.0 && self.thermal_capacitance.is_finite()) {
            return Err(Error::config("capacitance", "must be positive"));
        }
        if !(self.f_min >= 0.0 && self.f_min.is_finite()) {
            return Err(Error::config("f_min", "must be finite and non-negative"));
        }
        if !(self.f_max >= self.f_min && self.f_max.is_finite()) {
            return Err(Error::config("f_max", "must be finite and at least f_min"));
        }
        if !(self.step_hours > 0.0 && self.step_hours.is_finite()) {
            return Err(Error::config("step_hours", "must be positive"));
        }
        if self.orientations.len() != self.n_offices {
            return Err(Error::config(
                "orientations",
                format!(
                    "expected {} entries, got {}",
                    self.n_offices,
                    self.orientations.len()
                ),
            ));
        }
        let mut seen = vec![false; self.n_offices];
        if self.pipe_order.len() != self.n_offices {
            return Err(Error::config(
                "pipe_order",
                "must be a permutation of the office indices",
            ));
        }
        for &o in &self.pipe_order {
            if o >= self.n_offices || std::mem::replace(&mut seen[o], true) {
                return Err(Error::config(
                    "pipe_order",
                    "must be a permutation of the office indices",
                ));
            }
        }
        Ok(())
    }
}

/// Contiguous East/South/West/North blocks; exact quarters when `n` is a
/// multiple of four.
pub fn default_orientations(n: usize) -> Vec<Orientation> {
    (0..n).map(|o| Orientation::ALL[o * 4 / n.max(1)]).collect()
}

/// Building section of a configuration file. Orientations and pipe order
/// default to the even split for the given office count.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawBuilding {
    pub offices: usize,
    pub eta: f64,
    pub resistance: f64,
    pub capacitance: f64,
    pub f_min: f64,
    pub f_max: f64,
    pub resource: ResourceInput,
    pub step_hours: f64,
    pub orientations: Option<Vec<Orientation>>,
    pub pipe_order: Option<Vec<usize>>,
}

impl Default for RawBuilding {
    fn default() -> Self {
        let d = BuildingParams::default();
        RawBuilding {
            offices: d.n_offices,
            eta: d.eta,
            resistance: d.thermal_resistance,
            capacitance: d.thermal_capacitance,
            f_min: d.f_min,
            f_max: d.f_max,
            resource: d.resource_input,
            step_hours: d.step_hours,
            orientations: None,
            pipe_order: None,
        }
    }
}

impl TryFrom<RawBuilding> for BuildingParams {
    type Error = Error;

    fn try_from(raw: RawBuilding) -> Result<Self> {
        let n = raw.offices;
        let params = BuildingParams {
            n_offices: n,
            eta: raw.eta,
            thermal_resistance: raw.resistance,
            thermal_capacitance: raw.capacitance,
            f_min: raw.f_min,
            f_max: raw.f_max,
            resource_input: raw.resource,
            step_hours: raw.step_hours,
            orientations: raw.orientations.unwrap_or_else(|| default_orientations(n)),
            pipe_order: raw.pipe_order.unwrap_or_else(|| (0..n).collect()),
        };
        params.validate()?;
        Ok(params)
    }
}

/// Per-office dynamic state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OfficeState {
    pub temperature: f64,
    pub control_signal: f64,
    pub setpoint: f64,
}

fn hour_of_day(interval: u64, step_hours: f64) -> f64 {
    (interval as f64 * step_hours).rem_euclid(24.0)
}

fn bump(hour_shift: f64, interval: u64, step_hours: f64, width: f64) -> f64 {
    let h = (interval as f64 * step_hours + hour_shift).rem_euclid(24.0) - 12.0;
    (-h * h / width).exp()
}

/// Outdoor temperature at `interval`, swinging between 22 and 35 °C with its
/// peak at 16:00.
pub fn outdoor_temp(interval: u64, step_hours: f64) -> f64 {
    22.0 + 13.0 * bump(-4.0, interval, step_hours, 20.0)
}

/// Sun load on an office facing `orientation`. East, South and West peak at
/// 8:00, 12:00 and 16:00; North receives none.
pub fn sun_component(orientation: Orientation, interval: u64, step_hours: f64) -> f64 {
    match orientation {
        Orientation::East => 8.0 * bump(4.0, interval, step_hours, 5.0),
        Orientation::South => {
            let h = hour_of_day(interval, step_hours) - 12.0;
            15.0 * (-h * h / 5.0).exp()
        }
        Orientation::West => 8.0 * bump(-4.0, interval, step_hours, 5.0),
        Orientation::North => 0.0,
    }
}

/// One interval of weather for every office.
#[derive(Clone, Debug, PartialEq)]
pub struct WeatherSample {
    pub interval: u64,
    pub outdoor: f64,
    /// Indexed East, South, West, North.
    pub sun: [f64; 4],
    pub fluct: Vec<f64>,
    pub virtual_temp: Vec<f64>,
}

impl WeatherSample {
    pub fn sun_for(&self, orientation: Orientation) -> f64 {
        self.sun[orientation.index()]
    }

    /// Assembles a sample from given fluctuation draws.
    pub fn from_fluct(params: &BuildingParams, interval: u64, fluct: Vec<f64>) -> Self {
        let s = params.step_hours;
        let outdoor = outdoor_temp(interval, s);
        let sun = Orientation::ALL.map(|o| sun_component(o, interval, s));
        let virtual_temp = fluct
            .iter()
            .zip(&params.orientations)
            .map(|(f, o)| outdoor + sun[o.index()] + f)
            .collect();
        WeatherSample {
            interval,
            outdoor,
            sun,
            fluct,
            virtual_temp,
        }
    }
}

/// Draws one standard-normal fluctuation per office (in office index order)
/// and assembles the virtual temperatures.
///
/// Normals come from `rand_distr::StandardNormal` (ziggurat), so a given
/// generator state always yields the same sample.
pub fn sample_weather<R: Rng + ?Sized>(
    params: &BuildingParams,
    interval: u64,
    rng: &mut R,
) -> WeatherSample {
    let fluct = (0..params.n_offices)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    WeatherSample::from_fluct(params, interval, fluct)
}

/// Advances one office temperature by one interval given the power it
/// consumed during that interval.
#[inline]
pub fn step_temperature(t_prev: f64, t_virt: f64, p_cons: f64, r: f64, c: f64) -> f64 {
    (t_prev + (t_virt / r - p_cons) / c) / (1.0 + 1.0 / (r * c))
}

/// Heat flowing in from the environment at office temperature `temp`.
#[inline]
pub fn heat_power(t_virt: f64, temp: f64, r: f64) -> f64 {
    (t_virt - temp) / r
}

/// Sequential draw from the cold-air pipe.
#[derive(Clone, Copy, Debug)]
pub struct PipeCursor {
    available: f64,
    eta: f64,
}

impl PipeCursor {
    pub fn new(params: &BuildingParams) -> Self {
        PipeCursor {
            available: params.resource_input.head(),
            eta: params.eta,
        }
    }

    pub fn available(&self) -> f64 {
        self.available
    }

    /// Most the next office can consume.
    pub fn ceiling(&self) -> f64 {
        self.eta * self.available
    }

    /// Consumption an office at this position gets for `request`, without
    /// drawing it.
    pub fn grant(&self, request: f64) -> f64 {
        request.max(0.0).min(self.ceiling())
    }

    /// Consumes the granted amount and advances to the next office.
    pub fn draw(&mut self, request: f64) -> f64 {
        let consumed = self.grant(request);
        self.available -= consumed;
        consumed
    }
}

/// Result of walking the pipe once; all vectors are indexed by office.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerAllocation {
    pub available: Vec<f64>,
    pub consumed: Vec<f64>,
    /// What is left past the last office.
    pub outflow: f64,
}

/// Converts control signals (indexed by office) into consumed power by
/// walking the pipe from its head in `pipe_order`.
pub fn pipeline_allocate(requests: &[f64], params: &BuildingParams) -> PowerAllocation {
    let n = params.n_offices;
    let mut available = vec![0.0; n];
    let mut consumed = vec![0.0; n];
    let mut cursor = PipeCursor::new(params);
    for &o in &params.pipe_order {
        available[o] = cursor.available();
        consumed[o] = cursor.draw(requests[o]);
    }
    PowerAllocation {
        available,
        consumed,
        outflow: cursor.available(),
    }
}
