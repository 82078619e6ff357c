//! Clears a hand-made six-bid auction and shows the supply/demand gap at
//! every candidate price.

use climate_market::market_hc::{clear_auction, clearing_price, Bid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let raw = [
        (true, 2.0, 4.0),
        (true, 1.0, 3.0),
        (true, 2.0, 2.0),
        (false, 1.0, 3.0),
        (false, 2.0, 2.0),
        (false, 2.0, 1.0),
    ];
    let bids: Vec<Bid> = raw
        .iter()
        .enumerate()
        .map(|(k, &(sell, volume, price))| Bid {
            office: k + 1,
            sell,
            volume,
            price,
        })
        .collect();

    for p in [1.0, 2.0, 3.0, 4.0] {
        let supply: f64 = bids
            .iter()
            .filter(|b| b.sell && b.price <= p)
            .fold(0.0, |acc, b| acc + b.volume);
        let demand: f64 = bids
            .iter()
            .filter(|b| !b.sell && b.price >= p)
            .fold(0.0, |acc, b| acc + b.volume);
        println!(
            "price {p}: supply {supply}, demand {demand}, gap {}",
            (supply - demand).abs()
        );
    }
    println!("clearing price {:?}", clearing_price(&bids));

    let outcome = clear_auction(&bids, &mut ChaCha8Rng::seed_from_u64(1));
    for f in &outcome.fills {
        println!("bid {}: {:+}", f.office, f.signed_volume);
    }
}
