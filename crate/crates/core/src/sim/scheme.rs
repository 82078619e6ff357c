//! Per-interval decisions of every scheme.
//!
//! The office market and its ablations act on the readings of the previous
//! interval. The integrating controllers and the equilibrium market are
//! solved together with the thermal step by default: each office's control
//! signal and end-of-interval temperature satisfy the law and the RC step at
//! the same time. The building-wide quantity a law depends on (mean
//! temperature or price) is solved for in an outer bisection.
//!
//! The auction-free ablation is kept on previous readings: its requests always
//! add up to `alpha` in magnitude however small the deviations are, so a
//! same-interval version drives the normalising sum to zero and has no
//! regular solution.

use rand_chacha::ChaCha8Rng;

use crate::building::{pipeline_allocate, step_temperature, BuildingParams, PipeCursor};
use crate::controllers::{control_a_update, control_b_update, ControllerParams};
use crate::error::Result;
use crate::market_eq::{
    alpha_from_physics, demand_at, market_b_step, office_demand, MarketBParams,
};
use crate::market_hc::{
    apply_fills, clear_auction, compute_t, make_bids, no_auction_update, HcParams,
};
use crate::roots::{bisect_nondecreasing, bracket_nonincreasing};
use crate::snapshot::{mean, Snapshot};

use super::config::{ScenarioConfig, SchemeKind, Timing};

const COUPLING_REL_TOL: f64 = 1e-15;

/// Readings and drivers for one interval.
pub(crate) struct StepInput<'a> {
    pub building: &'a BuildingParams,
    pub prev_temps: &'a [f64],
    pub prev_controls: &'a [f64],
    pub setpoints: &'a [f64],
    pub virtual_temps: &'a [f64],
}

#[derive(Clone, Debug)]
pub(crate) struct StepOutput {
    pub temps: Vec<f64>,
    pub controls: Vec<f64>,
    pub consumed: Vec<f64>,
    pub price: Option<f64>,
}

pub(crate) struct SchemeRunner {
    kind: SchemeKind,
    timing: Timing,
    controller: ControllerParams,
    hc: Option<HcParams>,
    market_b: MarketBParams,
    alphas: Vec<f64>,
    rng: ChaCha8Rng,
}

impl SchemeRunner {
    pub fn new(config: &ScenarioConfig, rng: ChaCha8Rng) -> Self {
        let b = &config.building;
        let hc = config.scheme.hc_variant().map(|v| {
            let mut p =
                HcParams::new(v).with_alpha(config.effective_alpha().unwrap_or(v.default_alpha()));
            p.f_max = b.f_max;
            p
        });
        SchemeRunner {
            kind: config.scheme,
            timing: config.timing,
            controller: ControllerParams {
                gain: config.beta,
                f_min: b.f_min,
                f_max: b.f_max,
            },
            hc,
            market_b: MarketBParams {
                beta: config.beta,
                f_min: b.f_min,
                f_max: b.f_max,
                bounded: config.scheme == SchemeKind::MarketBBounded,
                eps: config.eps,
            },
            alphas: vec![
                alpha_from_physics(b.thermal_resistance, b.thermal_capacitance);
                b.n_offices
            ],
            rng,
        }
    }

    pub fn step(&mut self, input: &StepInput<'_>) -> Result<StepOutput> {
        let snapshot = Snapshot::new(input.prev_temps, input.setpoints, input.prev_controls)?;
        match self.kind {
            SchemeKind::Uncontrolled => Ok(apply_controls(
                input,
                vec![input.building.f_min; snapshot.len()],
                None,
            )),
            SchemeKind::MarketA | SchemeKind::MarketANoMoney | SchemeKind::MarketANoTemperature => {
                let hc = self.hc.expect("auction schemes carry market parameters");
                let bids = make_bids(&snapshot, &hc)?;
                let outcome = clear_auction(&bids, &mut self.rng);
                let b = input.building;
                let controls = apply_fills(input.prev_controls, &outcome.fills, b.f_min, b.f_max);
                Ok(apply_controls(input, controls, outcome.price))
            }
            SchemeKind::MarketANoAuction => self.previous_readings(input, &snapshot),
            _ if self.timing == Timing::Delayed => self.previous_readings(input, &snapshot),
            SchemeKind::ControlA => solve(
                &ControlA {
                    input,
                    gain: self.controller.gain,
                },
                input,
            ),
            SchemeKind::ControlB => solve(
                &ControlB {
                    input,
                    gain: self.controller.gain,
                    mean_setpoint: snapshot.mean_setpoint(),
                },
                input,
            ),
            SchemeKind::MarketBUnbounded | SchemeKind::MarketBBounded => solve(
                &MarketB {
                    input,
                    params: self.market_b,
                    alphas: &self.alphas,
                },
                input,
            ),
        }
    }

    fn previous_readings(
        &self,
        input: &StepInput<'_>,
        snapshot: &Snapshot<'_>,
    ) -> Result<StepOutput> {
        let (mt, ms) = (snapshot.mean_temp(), snapshot.mean_setpoint());
        let n = snapshot.len();
        let mut price = None;
        let controls = match self.kind {
            SchemeKind::ControlA => (0..n)
                .map(|o| {
                    control_a_update(
                        input.prev_controls[o],
                        input.prev_temps[o],
                        input.setpoints[o],
                        &self.controller,
                    )
                })
                .collect(),
            SchemeKind::ControlB => (0..n)
                .map(|o| {
                    control_b_update(
                        input.prev_controls[o],
                        input.prev_temps[o],
                        input.setpoints[o],
                        mt,
                        ms,
                        &self.controller,
                    )
                })
                .collect(),
            SchemeKind::MarketANoAuction => {
                let hc = self
                    .hc
                    .expect("auction-free ablation carries market parameters");
                let t = (0..n)
                    .map(|o| compute_t(input.prev_temps[o], input.setpoints[o], mt, ms))
                    .collect::<Result<Vec<_>>>()?;
                no_auction_update(
                    input.prev_controls,
                    &t,
                    hc.alpha,
                    self.controller.f_min,
                    self.controller.f_max,
                )
            }
            SchemeKind::MarketBUnbounded | SchemeKind::MarketBBounded => {
                let step = market_b_step(snapshot, &self.alphas, &self.market_b)?;
                price = Some(step.clearing.price);
                step.controls
            }
            _ => unreachable!("handled before dispatch"),
        };
        Ok(apply_controls(input, controls, price))
    }
}

/// Runs the pipe and the thermal step for fixed control signals.
fn apply_controls(input: &StepInput<'_>, controls: Vec<f64>, price: Option<f64>) -> StepOutput {
    let b = input.building;
    let alloc = pipeline_allocate(&controls, b);
    let temps = (0..b.n_offices)
        .map(|o| {
            step_temperature(
                input.prev_temps[o],
                input.virtual_temps[o],
                alloc.consumed[o],
                b.thermal_resistance,
                b.thermal_capacitance,
            )
        })
        .collect();
    StepOutput {
        temps,
        controls,
        consumed: alloc.consumed,
        price,
    }
}

/// A control law of the form `F = clamp(k T + d)` evaluated on the
/// temperature it produces. `k` must be non-negative and `d` may depend on
/// the couplings. For one-dimensional couplings `residual` must be
/// nonincreasing in the coupling.
trait LinearLaw {
    /// Starting point for the couplings, from the previous readings.
    fn initial_couplings(&self) -> Vec<f64>;
    /// `(k, d)` for office `o`.
    fn line(&self, o: usize, c: &[f64]) -> (f64, f64);
    /// Zero when `c` is consistent with the settled interval.
    fn residual(&self, c: &[f64], settled: &StepOutput) -> f64;
    fn price(&self, _c: &[f64]) -> Option<f64> {
        None
    }
}

/// Solves every office for fixed couplings, walking the pipe from its head.
///
/// With `T = A - a P` from the thermal step and `P = min(clamp(k T + d), ceiling)`
/// the fixed point is found exactly: take the unsaturated solution if it lies
/// inside the valve range, otherwise the saturated one.
fn settle(law: &dyn LinearLaw, c: &[f64], input: &StepInput<'_>) -> StepOutput {
    let b = input.building;
    let n = b.n_offices;
    let (r, cap) = (b.thermal_resistance, b.thermal_capacitance);
    let a = alpha_from_physics(r, cap);
    let mut out = StepOutput {
        temps: vec![0.0; n],
        controls: vec![0.0; n],
        consumed: vec![0.0; n],
        price: law.price(c),
    };
    let mut cursor = PipeCursor::new(b);
    for &o in &b.pipe_order {
        let step =
            |p: f64| step_temperature(input.prev_temps[o], input.virtual_temps[o], p, r, cap);
        let (k, d) = law.line(o, c);
        let ceiling = cursor.ceiling();
        let p = if ceiling <= b.f_min {
            ceiling
        } else {
            let upper = b.f_max.min(ceiling);
            let x = (step(0.0) - a * d) / (1.0 + a * k);
            (k * x + d).clamp(b.f_min, upper)
        };
        let temp = step(p);
        let f = (k * temp + d).clamp(b.f_min, b.f_max);
        out.consumed[o] = cursor.draw(f);
        out.temps[o] = step(out.consumed[o]);
        out.controls[o] = f;
    }
    out
}

fn solve(law: &dyn LinearLaw, input: &StepInput<'_>) -> Result<StepOutput> {
    let c0 = law.initial_couplings();
    let Some(&c0) = c0.first() else {
        return Ok(settle(law, &[], input));
    };
    let residual = |c: f64| law.residual(&[c], &settle(law, &[c], input));
    let width = 0.01 * c0.abs().max(1.0);
    let (lo, hi) = bracket_nonincreasing(residual, c0, width)?;
    let tol = COUPLING_REL_TOL * lo.abs().max(hi.abs()).max(1.0);
    let c = bisect_nondecreasing(|c| -residual(c), lo, hi, tol);
    Ok(settle(law, &[c], input))
}

struct ControlA<'a> {
    input: &'a StepInput<'a>,
    gain: f64,
}

impl LinearLaw for ControlA<'_> {
    fn initial_couplings(&self) -> Vec<f64> {
        Vec::new()
    }

    fn line(&self, o: usize, _c: &[f64]) -> (f64, f64) {
        let i = self.input;
        (self.gain, i.prev_controls[o] - self.gain * i.setpoints[o])
    }

    fn residual(&self, _c: &[f64], _settled: &StepOutput) -> f64 {
        0.0
    }
}

/// Coupling: the building mean temperature.
struct ControlB<'a> {
    input: &'a StepInput<'a>,
    gain: f64,
    mean_setpoint: f64,
}

impl LinearLaw for ControlB<'_> {
    fn initial_couplings(&self) -> Vec<f64> {
        vec![mean(self.input.prev_temps)]
    }

    fn line(&self, o: usize, c: &[f64]) -> (f64, f64) {
        let i = self.input;
        let shift = self.gain * (c[0] - self.mean_setpoint);
        (
            self.gain,
            i.prev_controls[o] - self.gain * i.setpoints[o] - shift,
        )
    }

    fn residual(&self, c: &[f64], settled: &StepOutput) -> f64 {
        mean(&settled.temps) - c[0]
    }
}

/// Coupling: the clearing price. The residual is the aggregate demand.
///
/// With bounds, `F_prev + clamp(phi - p / (2 alpha^2), f_min - F_prev,
/// f_max - F_prev)` is the same clamp of a line as in the unbounded case;
/// only the demand summed for the residual differs.
struct MarketB<'a> {
    input: &'a StepInput<'a>,
    params: MarketBParams,
    alphas: &'a [f64],
}

impl LinearLaw for MarketB<'_> {
    fn initial_couplings(&self) -> Vec<f64> {
        let i = self.input;
        let phi: f64 = (0..i.prev_temps.len())
            .map(|o| self.params.beta * (i.prev_temps[o] - i.setpoints[o]))
            .sum();
        let slope: f64 = self.alphas.iter().map(|a| 0.5 / (a * a)).sum();
        vec![phi / slope]
    }

    fn line(&self, o: usize, c: &[f64]) -> (f64, f64) {
        let i = self.input;
        let beta = self.params.beta;
        let a = self.alphas[o];
        (
            beta,
            i.prev_controls[o] - beta * i.setpoints[o] - c[0] / (2.0 * a * a),
        )
    }

    fn residual(&self, c: &[f64], settled: &StepOutput) -> f64 {
        let i = self.input;
        settled
            .temps
            .iter()
            .enumerate()
            .map(|(o, &t)| {
                let f = office_demand(
                    &self.params,
                    self.alphas[o],
                    t,
                    i.setpoints[o],
                    i.prev_controls[o],
                );
                demand_at(&f, c[0])
            })
            .sum()
    }

    fn price(&self, c: &[f64]) -> Option<f64> {
        Some(c[0])
    }
}
