//! The Huberman-Clearwater office market and its ablations.
//!
//! Every round each office agent compares its temperature ratio to the
//! building average, offers to sell (too cold) or buy (too hot) a share of a
//! fixed total volume `alpha`, and prices the bid by its marginal utility.
//! A single sealed-bid auction then picks the price that best balances
//! accepted supply and demand; the residual imbalance is rationed at random
//! on the long side.
//!
//! Bid prices are the marginal utilities themselves. The protocol as
//! originally stated multiplies them by the previous round's price. That
//! rescales every bid identically, so the allocation is unchanged, but the
//! product overflows after a few rounds.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snapshot::Snapshot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HcVariant {
    Original,
    /// Marginal utility with `U(0, m)` pinned at 2000.
    NoMoney,
    /// Flat bid prices: 10 for sellers, 100 for buyers.
    NoTemperature,
    /// Agents apply their own bid volumes; no auction.
    NoAuction,
}

impl HcVariant {
    /// Volume scale that gave the smallest spread for each variant.
    pub fn default_alpha(self) -> f64 {
        match self {
            HcVariant::Original => 64.0,
            HcVariant::NoMoney => 66.0,
            HcVariant::NoTemperature => 65.0,
            HcVariant::NoAuction => 17.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HcParams {
    pub alpha: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub f_max: f64,
    pub variant: HcVariant,
}

impl HcParams {
    pub fn new(variant: HcVariant) -> Self {
        HcParams {
            alpha: variant.default_alpha(),
            u1: 20.0,
            u2: 200.0,
            u3: 2000.0,
            f_max: 3.0,
            variant,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }
}

pub const NO_TEMPERATURE_SELL_PRICE: f64 = 10.0;
pub const NO_TEMPERATURE_BUY_PRICE: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bid {
    pub office: usize,
    pub sell: bool,
    pub volume: f64,
    pub price: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fill {
    pub office: usize,
    /// Positive for a purchase, negative for a sale.
    pub signed_volume: f64,
    pub clearing_price: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AuctionOutcome {
    /// `None` when no trade was possible.
    pub price: Option<f64>,
    pub fills: Vec<Fill>,
}

/// Temperature ratio deciding the side: above 1 sells, below 1 buys.
pub fn compute_t(temp: f64, setpoint: f64, mean_temp: f64, mean_setpoint: f64) -> Result<f64> {
    if temp == 0.0 {
        return Err(Error::DegenerateTemperature(
            "office temperature is zero".into(),
        ));
    }
    if mean_setpoint == 0.0 {
        return Err(Error::DegenerateTemperature("mean setpoint is zero".into()));
    }
    Ok((setpoint / temp) * (mean_temp / mean_setpoint))
}

/// Request volumes: each agent's share of `alpha` in proportion to `|1 - t|`.
/// All zero when every `t` equals one.
pub fn trade_volumes(t: &[f64], alpha: f64) -> Vec<f64> {
    let total: f64 = t.iter().map(|x| (1.0 - x).abs()).sum();
    if total == 0.0 {
        return vec![0.0; t.len()];
    }
    t.iter().map(|x| alpha * (1.0 - x).abs() / total).collect()
}

/// Money parameter from the control signal; 100 with the valve shut, 200
/// fully open.
pub fn money(f: f64, f_max: f64) -> f64 {
    100.0 * (2.0 - (f_max - f) / f_max)
}

/// Utility of holding nothing, as a function of money.
pub fn u_zero(m: f64, params: &HcParams) -> Result<f64> {
    let HcParams { u1, u2, u3, .. } = *params;
    if !(u1 < u2 && u2 < u3) {
        return Err(Error::InvalidUtilityConstants { u1, u2, u3 });
    }
    if params.variant == HcVariant::NoMoney {
        return Ok(2000.0);
    }
    let gamma = ((u3 - u1) / (u3 - u2)).ln();
    Ok(u3 - (u3 - u1) * (-gamma * m).exp())
}

/// Marginal utility `U(0, m)^(1 - t / setpoint)`.
pub fn marginal_utility(t: f64, setpoint: f64, m: f64, params: &HcParams) -> Result<f64> {
    Ok(u_zero(m, params)?.powf(1.0 - t / setpoint))
}

/// Bids for one round. Agents whose ratio is exactly one stay out.
pub fn make_bids(snapshot: &Snapshot<'_>, params: &HcParams) -> Result<Vec<Bid>> {
    let (mean_temp, mean_setpoint) = (snapshot.mean_temp(), snapshot.mean_setpoint());
    let t = snapshot
        .temps
        .iter()
        .zip(snapshot.setpoints)
        .map(|(&temp, &sp)| compute_t(temp, sp, mean_temp, mean_setpoint))
        .collect::<Result<Vec<_>>>()?;
    let volumes = trade_volumes(&t, params.alpha);

    let mut bids = Vec::new();
    for (office, (&t_o, &volume)) in t.iter().zip(&volumes).enumerate() {
        if t_o == 1.0 || volume == 0.0 {
            continue;
        }
        let sell = t_o > 1.0;
        let price = match params.variant {
            HcVariant::NoTemperature if sell => NO_TEMPERATURE_SELL_PRICE,
            HcVariant::NoTemperature => NO_TEMPERATURE_BUY_PRICE,
            _ => {
                let m = money(snapshot.controls[office], params.f_max);
                marginal_utility(t_o, snapshot.setpoints[office], m, params)?
            }
        };
        bids.push(Bid {
            office,
            sell,
            volume,
            price,
        });
    }
    Ok(bids)
}

fn accepted_volume(bids: &[Bid], price: f64) -> (f64, f64) {
    bids.iter().fold((0.0, 0.0), |(supply, demand), b| {
        if b.sell && b.price <= price {
            (supply + b.volume, demand)
        } else if !b.sell && b.price >= price {
            (supply, demand + b.volume)
        } else {
            (supply, demand)
        }
    })
}

/// The candidate bid price that minimises `|accepted supply - accepted
/// demand|`, lowest price on ties.
pub fn clearing_price(bids: &[Bid]) -> Option<f64> {
    let mut candidates: Vec<f64> = bids.iter().map(|b| b.price).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let mut best: Option<(f64, f64)> = None;
    for p in candidates {
        let (s, d) = accepted_volume(bids, p);
        let gap = (s - d).abs();
        if best.is_none_or(|(g, _)| gap < g) {
            best = Some((gap, p));
        }
    }
    best.map(|(_, p)| p)
}

/// Runs one auction round.
///
/// Sellers bidding at or below the clearing price sell their whole volume,
/// buyers at or above it buy theirs. The long side is then cut back in a
/// random order until supply equals demand; when the excess is smaller than
/// the first drawn agent's volume, that single agent delivers a fraction.
pub fn clear_auction<R: Rng + ?Sized>(bids: &[Bid], rng: &mut R) -> AuctionOutcome {
    let has_side = |sell: bool| bids.iter().any(|b| b.sell == sell && b.volume > 0.0);
    if !has_side(true) || !has_side(false) {
        return AuctionOutcome::default();
    }
    let Some(price) = clearing_price(bids) else {
        return AuctionOutcome::default();
    };

    let accepted: Vec<&Bid> = bids
        .iter()
        .filter(|b| {
            if b.sell {
                b.price <= price
            } else {
                b.price >= price
            }
        })
        .collect();
    let mut volumes: Vec<f64> = accepted.iter().map(|b| b.volume).collect();
    let (supply, demand) = accepted_volume(bids, price);

    let excess = supply - demand;
    if excess != 0.0 {
        let long_side_sells = excess > 0.0;
        let mut order: Vec<usize> = (0..accepted.len())
            .filter(|&k| accepted[k].sell == long_side_sells)
            .collect();
        order.shuffle(rng);
        let mut remaining = excess.abs();
        for k in order {
            if remaining <= 0.0 {
                break;
            }
            let cut = volumes[k].min(remaining);
            volumes[k] -= cut;
            remaining -= cut;
        }
    }

    let fills = accepted
        .iter()
        .zip(volumes)
        .filter(|(_, v)| *v > 0.0)
        .map(|(b, v)| Fill {
            office: b.office,
            signed_volume: if b.sell { -v } else { v },
            clearing_price: price,
        })
        .collect();
    AuctionOutcome {
        price: Some(price),
        fills,
    }
}

/// Moves each filled office's control signal by its traded volume (buyers
/// open, sellers close), clamped to `[f_min, f_max]`.
pub fn apply_fills(f_prev: &[f64], fills: &[Fill], f_min: f64, f_max: f64) -> Vec<f64> {
    let mut f = f_prev.to_vec();
    for fill in fills {
        f[fill.office] += fill.signed_volume;
    }
    f.iter_mut().for_each(|x| *x = x.clamp(f_min, f_max));
    f
}

/// Signed self-assigned move of one agent: buyers add their volume, sellers
/// subtract it.
pub fn signed_request(t: f64, volume: f64) -> f64 {
    if t < 1.0 {
        volume
    } else if t > 1.0 {
        -volume
    } else {
        0.0
    }
}

/// The auction-free ablation: every agent applies its own request.
pub fn no_auction_update(
    f_prev: &[f64],
    t: &[f64],
    alpha: f64,
    f_min: f64,
    f_max: f64,
) -> Vec<f64> {
    let volumes = trade_volumes(t, alpha);
    f_prev
        .iter()
        .zip(t.iter().zip(&volumes))
        .map(|(f, (&t_o, &v))| (f + signed_request(t_o, v)).clamp(f_min, f_max))
        .collect()
}
