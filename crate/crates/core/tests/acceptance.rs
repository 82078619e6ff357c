//! Acceptance suite. Each test prints one `PASS`/`FAIL` line with the
//! measured values before asserting.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;

use climate_market::building::ResourceInput;
use climate_market::market_eq::{clear_bounded, NetDemandFn};
use climate_market::market_hc::{clear_auction, u_zero, Bid, HcParams, HcVariant};
use climate_market::output::trace_csv;
use climate_market::sim::{
    run_comparison, run_scenario, sweep, Comparison, ScenarioConfig, SchemeKind, SweepParam,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Written straight to the process stdout so the line shows up even for
/// passing tests.
fn report(id: u32, title: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("{verdict} [{id:>2}] {title}: {detail}\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "{}", line.trim_end());
}

/// Shared afternoon comparison at resource 140 with the default seed.
fn afternoon() -> &'static Comparison {
    static CELL: OnceLock<Comparison> = OnceLock::new();
    CELL.get_or_init(|| {
        let schemes = [
            SchemeKind::ControlA,
            SchemeKind::ControlB,
            SchemeKind::MarketA,
            SchemeKind::MarketANoMoney,
            SchemeKind::MarketANoTemperature,
            SchemeKind::MarketANoAuction,
        ];
        let configs: Vec<ScenarioConfig> = schemes.into_iter().map(ScenarioConfig::new).collect();
        run_comparison(&configs).unwrap()
    })
}

fn mean_of(scheme: SchemeKind) -> f64 {
    afternoon().window_mean(scheme).unwrap()
}

#[test]
fn c01_worked_auction() {
    let bid = |office, sell, volume, price| Bid {
        office,
        sell,
        volume,
        price,
    };
    let bids = [
        bid(1, true, 2.0, 4.0),
        bid(2, true, 1.0, 3.0),
        bid(3, true, 2.0, 2.0),
        bid(4, false, 1.0, 3.0),
        bid(5, false, 2.0, 2.0),
        bid(6, false, 2.0, 1.0),
    ];
    let outcome = clear_auction(&bids, &mut ChaCha8Rng::seed_from_u64(0));
    let accepted: BTreeSet<usize> = bids
        .iter()
        .filter(|b| match outcome.price {
            Some(p) if b.sell => b.price <= p,
            Some(p) => b.price >= p,
            None => false,
        })
        .map(|b| b.office)
        .collect();
    let expected: BTreeSet<usize> = [2, 3, 4, 5].into();
    report(
        1,
        "six-bid example clears at 3 accepting bids 2-5",
        outcome.price == Some(3.0) && accepted == expected,
        format!("price {:?}, accepted bids {:?}", outcome.price, accepted),
    );
}

#[test]
fn c02_utility_of_nothing_range() {
    let params = HcParams::new(HcVariant::Original);
    let values: Vec<f64> = (0..=1000)
        .map(|k| u_zero(100.0 + k as f64 * 0.1, &params).unwrap())
        .collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    report(
        2,
        "U(0, m) over m in [100, 200] lies in [1999.85, 2000.0] +- 0.01",
        lo >= 1999.85 - 0.01 && hi <= 2000.0 + 0.01,
        format!("min {lo:.6}, max {hi:.6}"),
    );
}

#[test]
fn c03_unconstrained_regulation() {
    let mut worst = Vec::new();
    for beta in [1.0, 10.0, 100.0] {
        let mut c = ScenarioConfig::new(SchemeKind::ControlA);
        c.building.resource_input = ResourceInput::Unlimited;
        c.start_minute = 0;
        c.duration_minutes = 24 * 60;
        c.beta = beta;
        let trace = run_scenario(&c).unwrap();
        worst.push((beta, trace.max_abs_deviation(60)));
    }
    let pass = worst.iter().all(|&(_, d)| d <= 0.1);
    let detail = worst
        .iter()
        .map(|(b, d)| format!("beta {b}: {d:.4}"))
        .collect::<Vec<_>>()
        .join(", ");
    report(
        3,
        "local control, unlimited pipe, 24 h: max |T - sp| <= 0.1 after 60 steps",
        pass,
        detail,
    );
}

#[test]
fn c04_resource_monotonicity() {
    let base = ScenarioConfig::new(SchemeKind::ControlA);
    let points = sweep(&base, SweepParam::Resource, &[130.0, 140.0, 150.0, 160.0]).unwrap();
    let means: Vec<f64> = points.iter().map(|p| p.window_mean).collect();
    let pass = means.windows(2).all(|w| w[1] < w[0]);
    let detail = points
        .iter()
        .map(|p| format!("{}: {:.4}", p.value, p.window_mean))
        .collect::<Vec<_>>()
        .join(", ");
    report(
        4,
        "local control spread strictly decreases with resource",
        pass,
        detail,
    );
}

#[test]
fn c05_market_improvement() {
    let (a, m) = (mean_of(SchemeKind::ControlA), mean_of(SchemeKind::MarketA));
    report(
        5,
        "office market spread <= local control / 5",
        m <= a / 5.0,
        format!("local {a:.5}, market {m:.5}, ratio {:.1}", a / m),
    );
}

#[test]
fn c06_ablation_equivalence() {
    let m = mean_of(SchemeKind::MarketA);
    let nm = mean_of(SchemeKind::MarketANoMoney);
    let nt = mean_of(SchemeKind::MarketANoTemperature);
    let within = |x: f64| (x - m).abs() <= 0.25 * m;
    report(
        6,
        "no-money and no-temperature ablations within 25% of the market",
        within(nm) && within(nt),
        format!(
            "market {m:.5}, no-money {nm:.5} ({:+.1}%), no-temperature {nt:.5} ({:+.1}%)",
            100.0 * (nm / m - 1.0),
            100.0 * (nt / m - 1.0)
        ),
    );
}

#[test]
fn c07_no_auction_and_global_control() {
    let m = mean_of(SchemeKind::MarketA);
    let na = mean_of(SchemeKind::MarketANoAuction);
    let b = mean_of(SchemeKind::ControlB);
    report(
        7,
        "auction-free ablation and global control each <= market / 5",
        na <= m / 5.0 && b <= m / 5.0,
        format!(
            "market {m:.5}; auction-free {na:.5} (ratio {:.2}); global control {b:.5} (ratio {:.2})",
            m / na,
            m / b
        ),
    );
}

#[test]
fn c08_equilibrium_market_equals_global_control() {
    let control = run_scenario(&ScenarioConfig::new(SchemeKind::ControlB)).unwrap();
    let market = run_scenario(&ScenarioConfig::new(SchemeKind::MarketBUnbounded)).unwrap();
    let mut worst_f: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for (a, b) in control.records.iter().zip(&market.records) {
        for o in 0..a.temps.len() {
            worst_f = worst_f.max((a.controls[o] - b.controls[o]).abs());
            worst_t = worst_t.max((a.temps[o] - b.temps[o]).abs());
        }
    }
    let pass = control.len() == 240 && market.len() == 240 && worst_f <= 1e-9 && worst_t <= 1e-9;
    report(
        8,
        "unbounded equilibrium market matches global control over 240 steps",
        pass,
        format!("max |dF| {worst_f:.2e}, max |dT| {worst_t:.2e}"),
    );
}

#[test]
fn c09_equilibrium_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_sum, mut worst_mu, mut violations): (f64, f64, usize) = (0.0, 0.0, 0);
    for _ in 0..1000 {
        let n = rng.random_range(2..=10);
        let fns: Vec<NetDemandFn> = (0..n)
            .map(|_| NetDemandFn {
                phi: rng.random_range(-5.0..5.0),
                alpha_sq: rng.random_range(0.01..10.0),
                lower: rng.random_range(-3.0..0.0),
                upper: rng.random_range(0.0..3.0),
            })
            .collect();
        let r = clear_bounded(&fns, 1e-9).unwrap();
        worst_sum = worst_sum.max(r.deltas.iter().sum::<f64>().abs());
        let interior: Vec<f64> = fns
            .iter()
            .zip(&r.deltas)
            .filter(|(f, &d)| d > f.lower && d < f.upper)
            .map(|(f, &d)| f.marginal_utility(d))
            .collect();
        for mu in &interior {
            worst_mu = worst_mu.max((mu - interior[0]).abs());
        }
        violations += fns
            .iter()
            .zip(&r.deltas)
            .filter(|(f, &d)| d < f.lower || d > f.upper)
            .count();
    }
    report(
        9,
        "bounded clearing: zero sum, bounds held, equal interior marginal utility",
        worst_sum <= 1e-9 && violations == 0 && worst_mu <= 1e-6,
        format!("max |sum dF| {worst_sum:.2e}, bound violations {violations}, max marginal-utility gap {worst_mu:.2e}"),
    );
}

/// Best total utility over zero-sum allocations on the grid `k * step`,
/// found by pairing agents (0, 1) and (2, 3) and matching their sums.
fn grid_optimum(fns: &[NetDemandFn; 4], step: f64) -> f64 {
    let range = |f: &NetDemandFn| {
        (
            (f.lower / step).round() as i64,
            (f.upper / step).round() as i64,
        )
    };
    let utility = |f: &NetDemandFn, k: i64| -f.alpha_sq * (k as f64 * step - f.phi).powi(2);
    let pair = |a: &NetDemandFn, b: &NetDemandFn| {
        let ((a0, a1), (b0, b1)) = (range(a), range(b));
        let base = a0 + b0;
        let mut best = vec![f64::NEG_INFINITY; (a1 + b1 - base + 1) as usize];
        for ka in a0..=a1 {
            let ua = utility(a, ka);
            for kb in b0..=b1 {
                let slot = &mut best[(ka + kb - base) as usize];
                *slot = slot.max(ua + utility(b, kb));
            }
        }
        (base, best)
    };
    let (base_l, left) = pair(&fns[0], &fns[1]);
    let (base_r, right) = pair(&fns[2], &fns[3]);
    let mut best = f64::NEG_INFINITY;
    for (i, ul) in left.iter().enumerate() {
        let j = -(base_l + i as i64) - base_r;
        if (0..right.len() as i64).contains(&j) {
            best = best.max(ul + right[j as usize]);
        }
    }
    best
}

#[test]
fn c10_brute_force_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let draw = |rng: &mut ChaCha8Rng| NetDemandFn {
            phi: rng.random_range(-1.5..1.5),
            alpha_sq: rng.random_range(0.05..5.0),
            lower: -(rng.random_range(0..=1000) as f64) * 1e-3,
            upper: rng.random_range(0..=1000) as f64 * 1e-3,
        };
        let fns = [
            draw(&mut rng),
            draw(&mut rng),
            draw(&mut rng),
            draw(&mut rng),
        ];
        let r = clear_bounded(&fns, 1e-9).unwrap();
        let cleared: f64 = fns.iter().zip(&r.deltas).map(|(f, &d)| f.utility(d)).sum();
        worst = worst.max((cleared - grid_optimum(&fns, 1e-3)).abs());
    }
    report(
        10,
        "cleared allocation within 1e-2 of the best zero-sum grid allocation",
        worst <= 1e-2,
        format!("max |utility gap| {worst:.2e} over 100 instances"),
    );
}

#[test]
fn c11_determinism() {
    let mut identical = true;
    for scheme in [
        SchemeKind::MarketA,
        SchemeKind::ControlB,
        SchemeKind::MarketBBounded,
    ] {
        let mut c = ScenarioConfig::new(scheme);
        c.seed = 42;
        let a = trace_csv(&run_scenario(&c).unwrap(), true);
        let b = trace_csv(&run_scenario(&c).unwrap(), true);
        identical &= a == b;
    }
    report(
        11,
        "same seed gives byte-identical CSV",
        identical,
        format!("identical: {identical}"),
    );
}
