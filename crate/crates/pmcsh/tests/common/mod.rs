//! Brute-force Gaussian quadrature oracles, independent of every erfc-based
//! code path in the library. Decision-region probabilities come from
//! composite Simpson integration of the normal density; 2D regions are
//! axis-aligned rectangles, integrated dimension by dimension.

// Each test target compiles its own copy and uses a different subset.
#![allow(dead_code)]

/// Mass of N(mean, sigma^2) on [lo, hi] by composite Simpson integration.
/// Tails beyond 12 sigma carry < 2e-33 and are truncated.
pub fn gaussian_mass(mean: f64, sigma: f64, lo: f64, hi: f64) -> f64 {
    let lo = lo.max(mean - 12.0 * sigma);
    let hi = hi.min(mean + 12.0 * sigma);
    if hi <= lo {
        return 0.0;
    }
    let n = 4000; // even panel count; error ~ (hi-lo) h^4 f''''/180 < 1e-9
    let h = (hi - lo) / n as f64;
    let pdf = |x: f64| {
        let z = (x - mean) / sigma;
        (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
    };
    let mut acc = pdf(lo) + pdf(hi);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * pdf(lo + k as f64 * h);
    }
    acc * h / 3.0
}

/// Standard normal tail probability by quadrature.
pub fn q_oracle(x: f64) -> f64 {
    gaussian_mass(0.0, 1.0, x, f64::INFINITY)
}

/// PAM4 symbol error probability: one minus the average over symbols of the
/// mass each symbol keeps inside its own decision interval.
pub fn pam4_ser_oracle(levels: [f64; 4], thresholds: [f64; 3], sigmas: [f64; 4]) -> f64 {
    let edges = [
        (f64::NEG_INFINITY, thresholds[0]),
        (thresholds[0], thresholds[1]),
        (thresholds[1], thresholds[2]),
        (thresholds[2], f64::INFINITY),
    ];
    let p_correct: f64 = (0..4)
        .map(|i| gaussian_mass(levels[i], sigmas[i], edges[i].0, edges[i].1))
        .sum::<f64>()
        / 4.0;
    1.0 - p_correct
}

fn intervals(levels: &[f64], thresholds: &[f64]) -> Vec<(f64, f64)> {
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend_from_slice(thresholds);
    edges.push(f64::INFINITY);
    (0..levels.len())
        .map(|i| (edges[i], edges[i + 1]))
        .collect()
}

/// Gray-coded QPSK bit error rate: every symbol sees the same quadrant, so
/// P(C) is the product of two one-dimensional masses; BER = P(E) / 2.
pub fn qpsk_ber_oracle(a: f64, sigma: f64) -> f64 {
    let per_dim = gaussian_mass(a, sigma, 0.0, f64::INFINITY);
    (1.0 - per_dim * per_dim) / 2.0
}

/// Gray-coded 16-QAM bit error rate: average the correct-decision mass over
/// all 16 rectangular regions of the {-a, -a/3, a/3, a} grid; BER = P(E)/4.
pub fn qam16_ber_oracle(a: f64, sigma: f64) -> f64 {
    let levels = [-a, -a / 3.0, a / 3.0, a];
    let thresholds = [-2.0 * a / 3.0, 0.0, 2.0 * a / 3.0];
    let cells = intervals(&levels, &thresholds);
    let mut p_correct = 0.0;
    for (i, &(ilo, ihi)) in cells.iter().enumerate() {
        for (q, &(qlo, qhi)) in cells.iter().enumerate() {
            p_correct += gaussian_mass(levels[i], sigma, ilo, ihi)
                * gaussian_mass(levels[q], sigma, qlo, qhi);
        }
    }
    (1.0 - p_correct / 16.0) / 4.0
}

/// Bisect the laser power (dBm) at which `ber(power_dbm)` crosses `target`;
/// `ber` must be monotone decreasing in power.
pub fn power_dbm_at_ber(target: f64, mut ber: impl FnMut(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (-25.0, 25.0);
    assert!(
        ber(lo) > target && ber(hi) < target,
        "target {target:e} not bracketed by [{:e}, {:e}]",
        ber(lo),
        ber(hi)
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ber(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
