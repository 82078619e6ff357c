//! Equilibrium market over changes in the control signal.
//!
//! Each office agent holds the quasi-linear utility
//! `u(dF, m) = -alpha^2 (dF - phi)^2 + m`, where `phi = beta (T - T_setp)` is
//! the move an independent integrating controller would make. A price-taking
//! agent facing price `p` demands `phi - p / (2 alpha^2)`, clamped to the
//! moves its valve allows. The auctioneer looks for the price at which the
//! demands sum to zero, so cooling is only redistributed.
//!
//! Without bounds the clearing price has a closed form and the outcome is the
//! globally corrected integrating controller; with equal `alpha` it is exactly
//! [`crate::controllers::control_b_update`].

use crate::error::{Error, Result};
use crate::roots::bracket_nonincreasing;
use crate::snapshot::Snapshot;

/// Default tolerance on `|sum of dF|`.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetDemandFn {
    pub phi: f64,
    pub alpha_sq: f64,
    pub lower: f64,
    pub upper: f64,
}

impl NetDemandFn {
    pub fn unbounded(phi: f64, alpha_sq: f64) -> Self {
        NetDemandFn {
            phi,
            alpha_sq,
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        }
    }

    /// Utility of the move `delta`, money excluded.
    pub fn utility(&self, delta: f64) -> f64 {
        -self.alpha_sq * (delta - self.phi).powi(2)
    }

    /// `du/d(dF)` at `delta`.
    pub fn marginal_utility(&self, delta: f64) -> f64 {
        -2.0 * self.alpha_sq * (delta - self.phi)
    }

    /// Price below which the agent sits at `upper`.
    fn upper_kink(&self) -> f64 {
        2.0 * self.alpha_sq * (self.phi - self.upper)
    }

    /// Price above which the agent sits at `lower`.
    fn lower_kink(&self) -> f64 {
        2.0 * self.alpha_sq * (self.phi - self.lower)
    }

    fn regime(&self, p: f64) -> i8 {
        let raw = self.phi - p / (2.0 * self.alpha_sq);
        if raw <= self.lower {
            -1
        } else if raw >= self.upper {
            1
        } else {
            0
        }
    }
}

/// Utility-maximising move of a price taker.
pub fn demand_at(f: &NetDemandFn, p: f64) -> f64 {
    (f.phi - p / (2.0 * f.alpha_sq)).clamp(f.lower, f.upper)
}

/// Aggregate excess demand; continuous and nonincreasing in `p`.
pub fn aggregate_demand(fns: &[NetDemandFn], p: f64) -> f64 {
    fns.iter().map(|f| demand_at(f, p)).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClearingResult {
    pub price: f64,
    pub deltas: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl ClearingResult {
    fn at_price(fns: &[NetDemandFn], price: f64, iterations: usize) -> Self {
        let deltas: Vec<f64> = fns.iter().map(|f| demand_at(f, price)).collect();
        let residual = deltas.iter().sum::<f64>().abs();
        ClearingResult {
            price,
            deltas,
            residual,
            iterations,
        }
    }

    /// Money each agent pays for its move, `p * dF` (negative when paid).
    pub fn transfers(&self) -> Vec<f64> {
        self.deltas.iter().map(|d| self.price * d).collect()
    }
}

/// Closed-form clearing ignoring bounds: `p = sum(phi) / sum(1 / (2 alpha^2))`.
pub fn clear_unbounded(fns: &[NetDemandFn]) -> Result<ClearingResult> {
    if fns.is_empty() {
        return Err(Error::NoOffices);
    }
    let price = unbounded_price(fns);
    let unclamped: Vec<NetDemandFn> = fns
        .iter()
        .map(|f| NetDemandFn::unbounded(f.phi, f.alpha_sq))
        .collect();
    Ok(ClearingResult::at_price(&unclamped, price, 0))
}

fn unbounded_price(fns: &[NetDemandFn]) -> f64 {
    let phi: f64 = fns.iter().map(|f| f.phi).sum();
    let slope: f64 = fns.iter().map(|f| 0.5 / f.alpha_sq).sum();
    phi / slope
}

/// Bounded clearing by bisection on the price.
///
/// The bracket starts at the unbounded price widened to cover every kink of
/// the clamped demands and is doubled up to [`crate::roots::MAX_DOUBLINGS`] times. Once no
/// agent changes regime inside the bracket the aggregate demand is linear
/// there and the root is taken exactly. When every agent is saturated the
/// allocation does not depend on the price and the bracket midpoint is
/// returned.
pub fn clear_bounded(fns: &[NetDemandFn], eps: f64) -> Result<ClearingResult> {
    if fns.is_empty() {
        return Err(Error::NoOffices);
    }
    let lower_sum: f64 = fns.iter().map(|f| f.lower).sum();
    let upper_sum: f64 = fns.iter().map(|f| f.upper).sum();
    if lower_sum > 0.0 || upper_sum < 0.0 {
        return Err(Error::NoFeasibleReallocation {
            lower_sum,
            upper_sum,
        });
    }

    let center = unbounded_price(fns);
    let half = fns
        .iter()
        .flat_map(|f| [f.upper_kink(), f.lower_kink()])
        .filter(|k| k.is_finite())
        .map(|k| (k - center).abs())
        .fold(1.0f64, f64::max);
    let z = |p: f64| aggregate_demand(fns, p);
    let (mut lo, mut hi) = bracket_nonincreasing(z, center, half)?;

    let same_regimes = |a: f64, b: f64| fns.iter().all(|f| f.regime(a) == f.regime(b));
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (z_lo, z_hi) = (z(lo), z(hi));
        if same_regimes(lo, hi) {
            let p = if z_lo - z_hi > 0.0 {
                lo + z_lo * (hi - lo) / (z_lo - z_hi)
            } else {
                0.5 * (lo + hi)
            };
            let result = ClearingResult::at_price(fns, p.clamp(lo, hi), iterations);
            return finish(result, eps);
        }
        let mid = 0.5 * (lo + hi);
        let z_mid = z(mid);
        if z_mid.abs() <= eps || mid <= lo || mid >= hi {
            return finish(ClearingResult::at_price(fns, mid, iterations), eps);
        }
        if z_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

fn finish(result: ClearingResult, eps: f64) -> Result<ClearingResult> {
    if result.residual <= eps {
        Ok(result)
    } else {
        Err(Error::NonConvergence {
            iterations: result.iterations,
            residual: result.residual,
        })
    }
}

/// Magnitude of the temperature response to one unit of consumed power over
/// one interval, `(1/C) / (1 + 1/(R C))`. Cooling lowers the temperature; the
/// sign is dropped because only the square enters the utility.
pub fn alpha_from_physics(r: f64, c: f64) -> f64 {
    (1.0 / c) / (1.0 + 1.0 / (r * c))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarketBParams {
    pub beta: f64,
    pub f_min: f64,
    pub f_max: f64,
    pub bounded: bool,
    pub eps: f64,
}

/// Demand function of one office given its temperature reading.
pub fn office_demand(
    params: &MarketBParams,
    alpha: f64,
    temp: f64,
    setpoint: f64,
    f_prev: f64,
) -> NetDemandFn {
    let phi = params.beta * (temp - setpoint);
    if params.bounded {
        NetDemandFn {
            phi,
            alpha_sq: alpha * alpha,
            lower: params.f_min - f_prev,
            upper: params.f_max - f_prev,
        }
    } else {
        NetDemandFn::unbounded(phi, alpha * alpha)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarketBStep {
    pub controls: Vec<f64>,
    pub clearing: ClearingResult,
}

/// One market round: build demand functions, clear, and move the control
/// signals. Unbounded clearing may push signals out of range, so those are
/// clamped afterwards; bounded clearing respects the range by construction.
pub fn market_b_step(
    snapshot: &Snapshot<'_>,
    alphas: &[f64],
    params: &MarketBParams,
) -> Result<MarketBStep> {
    if alphas.len() != snapshot.len() {
        return Err(Error::LengthMismatch {
            what: "alphas",
            got: alphas.len(),
            expected: snapshot.len(),
        });
    }
    let fns: Vec<NetDemandFn> = (0..snapshot.len())
        .map(|o| {
            office_demand(
                params,
                alphas[o],
                snapshot.temps[o],
                snapshot.setpoints[o],
                snapshot.controls[o],
            )
        })
        .collect();
    let clearing = if params.bounded {
        clear_bounded(&fns, params.eps)?
    } else {
        clear_unbounded(&fns)?
    };
    let controls = snapshot
        .controls
        .iter()
        .zip(&clearing.deltas)
        .map(|(f, d)| {
            let next = f + d;
            if params.bounded {
                next
            } else {
                next.clamp(params.f_min, params.f_max)
            }
        })
        .collect();
    Ok(MarketBStep { controls, clearing })
}
