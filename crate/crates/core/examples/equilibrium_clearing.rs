//! Clears a small bounded equilibrium market and prints each agent's move,
//! marginal utility and payment.

use climate_market::market_eq::{clear_bounded, clear_unbounded, NetDemandFn};

fn main() -> climate_market::Result<()> {
    let agents = [
        NetDemandFn {
            phi: 1.2,
            alpha_sq: 1.0,
            lower: -0.5,
            upper: 0.4,
        },
        NetDemandFn {
            phi: 0.5,
            alpha_sq: 2.0,
            lower: -1.0,
            upper: 1.0,
        },
        NetDemandFn {
            phi: 0.1,
            alpha_sq: 0.5,
            lower: -1.0,
            upper: 1.0,
        },
        NetDemandFn {
            phi: -0.6,
            alpha_sq: 1.5,
            lower: -0.2,
            upper: 1.0,
        },
    ];
    let free = clear_unbounded(&agents)?;
    println!("unbounded price {:.6}", free.price);
    let bounded = clear_bounded(&agents, 1e-12)?;
    println!(
        "bounded price {:.6} after {} iterations",
        bounded.price, bounded.iterations
    );
    for ((a, d), pay) in agents.iter().zip(&bounded.deltas).zip(bounded.transfers()) {
        println!(
            "phi {:+.2}  dF {:+.6}  marginal utility {:+.6}  pays {:+.6}",
            a.phi,
            d,
            a.marginal_utility(*d),
            pay
        );
    }
    println!("sum of moves {:.2e}", bounded.deltas.iter().sum::<f64>());
    Ok(())
}
