//! Convergence of the adaptive polarization controller on random channel
//! rotations: the gradient-descent loop drives the tapped monitor current
//! down until the carrier and signal polarizations separate cleanly.

use pmcsh::epc::{run_to_convergence, ControllerConfig};
use pmcsh::jones::random_sop;

fn main() {
    let cfg = ControllerConfig::default();
    println!(
        "controller: {}% tap, step {}, dither {} rad, target {} dB extinction\n",
        cfg.tap_fraction * 100.0,
        cfg.step_size,
        cfg.dither,
        cfg.target_er_db
    );

    // One channel in detail.
    let channel = random_sop(2024);
    let run = run_to_convergence(&channel, &cfg, 2024).unwrap();
    println!("single Haar-random channel, trace (feedback is A per W of carrier):");
    println!("iteration | feedback (A) | extinction (dB)");
    for p in &run.trace {
        if p.iteration % 2 == 0 || p.iteration + 1 == run.trace.len() {
            println!(
                "{:9} | {:.5e}   | {:8.2}",
                p.iteration, p.feedback_current_a, p.extinction_ratio_db
            );
        }
    }
    println!(
        "converged: {} after {} iterations\n",
        run.converged(),
        run.iterations()
    );

    // Statistics over many channels.
    let mut iters = Vec::new();
    let mut failures = 0;
    for seed in 0..100 {
        let run = run_to_convergence(&random_sop(seed), &cfg, seed).unwrap();
        if run.converged() {
            iters.push(run.iterations());
        } else {
            failures += 1;
        }
    }
    iters.sort_unstable();
    println!("100 random channels:");
    println!("  converged: {}", iters.len());
    println!("  failed:    {failures}");
    println!(
        "  iterations to {} dB: median {}, p90 {}, max {}",
        cfg.target_er_db,
        iters[iters.len() / 2],
        iters[iters.len() * 9 / 10],
        iters.last().unwrap()
    );
}
