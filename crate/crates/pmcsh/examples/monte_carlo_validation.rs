//! Monte Carlo runs against the exact analytic BER at a few operating
//! points per format: the simulated rate should land inside the 95%
//! confidence interval around the closed-form value.

use pmcsh::analytic::ber_exact_chain;
use pmcsh::monte_carlo::simulate;
use pmcsh::{Format, LinkParams, SimConfig};

fn power_at(target: f64, format: Format, base: &LinkParams) -> f64 {
    let (mut lo, mut hi) = (-25.0f64, 25.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ber_exact_chain(format, &base.clone().with_pt_dbm(mid)).unwrap() > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn main() {
    let base = LinkParams::fig4_defaults();
    let n_symbols = 1_000_000;
    println!("1e6 symbols per point, discrete-modulator preset\n");
    println!("format      | target  | power (dBm) | analytic    | simulated   | 95% CI            | inside");
    println!("------------+---------+-------------+-------------+-------------+-------------------+-------");

    for (fi, format) in Format::ALL.into_iter().enumerate() {
        for (ti, target) in [1e-2, 1e-3, 1e-4].into_iter().enumerate() {
            let dbm = power_at(target, format, &base);
            let link = base.clone().with_pt_dbm(dbm);
            let analytic = ber_exact_chain(format, &link).unwrap();
            let cfg = SimConfig::new(format, link, n_symbols, 1000 + (fi * 4 + ti) as u64);
            let r = simulate(&cfg).unwrap();
            let inside = analytic >= r.ci_low && analytic <= r.ci_high;
            println!(
                "{:11} | {target:.0e} | {dbm:11.2} | {analytic:.5e} | {:.5e} | [{:.3e}, {:.3e}] | {}",
                format!("{format:?}"),
                r.ber,
                r.ci_low,
                r.ci_high,
                if inside { "yes" } else { "no" }
            );
        }
    }

    println!();
    println!("Simulation and closed forms overlap within binomial resolution at");
    println!("the operating points of interest. Near BER 1e-2 the bit-true count");
    println!("can sit a percent above the SER/m gray conversion (multi-bit symbol");
    println!("errors); the gap vanishes below 1e-3.");
}
