//! Seeded end-to-end symbol-level link simulation: random bits, gray
//! mapping, link-budget scaling, optional polarization channel with the
//! adaptive controller, additive thermal noise, ML detection, and bit error
//! counting.
//!
//! Reproducibility: one master seed expands into independent ChaCha streams
//! per purpose (data bits, noise, channel draw, controller start), so
//! enabling the polarization channel does not perturb the bit or noise
//! sequences. Symbols are partitioned into fixed-size blocks with
//! per-block streams; blocks run concurrently and merge by summing counts,
//! so results do not depend on thread count or scheduling.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::budget::{pam4_received, pmcsh_powers, LinkParams, ReceivedSignal};
use crate::constellation::{ConstellationSpec, Format};
use crate::epc::{run_to_convergence, ControllerConfig};
use crate::error::{Error, Result};
use crate::jones::{JonesMatrix, JonesVector, SopDrift, UNITARITY_TOL};

/// Symbols per RNG block; a protocol constant, not a tuning knob — changing
/// it would reshuffle the per-symbol random streams.
const BLOCK_SYMBOLS: u64 = 1 << 16;

// Stream-id bases. The controller seeds its own generator at stream 0, so
// block streams start above 2^40.
const STREAM_BITS: u64 = 1 << 40;
const STREAM_NOISE: u64 = 2 << 40;
const STREAM_CHANNEL: u64 = 3 << 40;

/// How the channel rotation is chosen when the polarization path is on.
#[derive(Debug, Clone, PartialEq)]
pub enum SopSpec {
    /// Haar-uniform rotation drawn from the master seed's channel stream.
    Random,
    /// A caller-supplied rotation; must be unitary.
    Fixed(JonesMatrix),
    /// Snapshot of a drift process (the rotation at its current angles).
    Drift(SopDrift),
}

/// One Monte Carlo run description.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub format: Format,
    pub link: LinkParams,
    pub n_symbols: u64,
    pub seed: u64,
    /// Route PMC-SH formats through the polarization channel and the
    /// adaptive controller. PAM4 direct detection has no polarization
    /// diversity and ignores this flag.
    pub pol_enabled: bool,
    pub sop: SopSpec,
    pub controller: ControllerConfig,
}

impl SimConfig {
    pub fn new(format: Format, link: LinkParams, n_symbols: u64, seed: u64) -> Self {
        SimConfig {
            format,
            link,
            n_symbols,
            seed,
            pol_enabled: false,
            sop: SopSpec::Random,
            controller: ControllerConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.link.validate()?;
        if self.n_symbols < 10_000 {
            return Err(Error::config(format!(
                "n_symbols must be at least 10^4 for meaningful counting, got {}",
                self.n_symbols
            )));
        }
        if self.pol_enabled {
            self.controller.validate()?;
            if let SopSpec::Fixed(m) = &self.sop {
                if !m.is_unitary(UNITARITY_TOL) {
                    return Err(Error::invalid("fixed channel rotation must be unitary"));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    pub bit_errors: u64,
    pub bits: u64,
    pub symbol_errors: u64,
    pub ber: f64,
    /// 95% Wilson score interval on the bit error rate.
    pub ci_low: f64,
    pub ci_high: f64,
    /// No errors were observed; `ber` is 0 and only `ci_high` is
    /// informative.
    pub below_resolution: bool,
}

/// 95% Wilson score interval for `errors` successes in `trials`.
pub fn binomial_ci(errors: u64, trials: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::invalid("binomial_ci needs at least one trial"));
    }
    if errors > trials {
        return Err(Error::invalid(format!(
            "errors ({errors}) cannot exceed trials ({trials})"
        )));
    }
    const Z: f64 = 1.959_963_984_540_054; // 97.5th normal percentile
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2n = Z * Z / n;
    let denom = 1.0 + z2n;
    let center = (p + z2n / 2.0) / denom;
    let half = Z * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt() / denom;
    // The interval endpoints are exact at the boundary counts.
    let low = if errors == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if errors == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((low, high))
}

#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    bit_errors: u64,
    symbol_errors: u64,
}

impl Counts {
    fn merge(self, other: Counts) -> Counts {
        Counts {
            bit_errors: self.bit_errors + other.bit_errors,
            symbol_errors: self.symbol_errors + other.symbol_errors,
        }
    }
}

/// Everything the per-symbol polarization path needs, precomputed once.
struct PolContext {
    /// Compensator times channel.
    effective: JonesMatrix,
    /// Post-detection correction `conj(u)/|u|^2` for the through-path gain
    /// `u = M_xx conj(M_yy)`: a one-time pilot calibration of the static
    /// phase and scale, the polarization analogue of the genie-scaled PAM4
    /// thresholds.
    correction: Complex64,
    /// Constant beat offset removed by the receiver's DC block: the
    /// carrier-carrier and mean signal-signal cross terms.
    offset: Complex64,
    /// Responsivity times the format's level-to-field scale.
    gain_r: f64,
    sqrt_ps: f64,
    sqrt_pc: f64,
}

fn format_field_scale(format: Format) -> f64 {
    match format {
        Format::Qpsk => 1.0,
        Format::Qam16 => 0.9f64.sqrt(),
        Format::Pam4 => unreachable!("PAM4 has no coherent field scale"),
    }
}

/// Mean of |s|^2 over the unit-peak transmit alphabet.
fn mean_unit_symbol_power(format: Format) -> f64 {
    match format {
        Format::Qpsk => 1.0,
        Format::Qam16 => 5.0 / 9.0,
        Format::Pam4 => unreachable!(),
    }
}

fn build_pol_context(cfg: &SimConfig, rx: &ReceivedSignal) -> Result<PolContext> {
    let channel = match &cfg.sop {
        SopSpec::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(STREAM_CHANNEL);
            crate::jones::random_sop_from(&mut rng)
        }
        SopSpec::Fixed(m) => *m,
        SopSpec::Drift(d) => d.matrix(),
    };
    let run = run_to_convergence(&channel, &cfg.controller, cfg.seed)?;
    if !run.converged() {
        return Err(Error::config(format!(
            "polarization controller did not reach {} dB extinction within {} iterations",
            cfg.controller.target_er_db, cfg.controller.max_iters
        )));
    }
    let m = run.state.compensator().compose(&channel);
    let u = m.xx * m.yy.conj();
    let gain_r = cfg.link.responsivity * format_field_scale(cfg.format);
    let offset = gain_r
        * (m.xy * m.yy.conj() * rx.pc
            + m.xx * m.yx.conj() * rx.ps * mean_unit_symbol_power(cfg.format));
    Ok(PolContext {
        effective: m,
        correction: u.conj() / u.norm_sqr(),
        offset,
        gain_r,
        sqrt_ps: rx.ps.sqrt(),
        sqrt_pc: rx.pc.sqrt(),
    })
}

/// Run the configured simulation. Deterministic per config.
pub fn simulate(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let rx = match cfg.format {
        Format::Pam4 => pam4_received(&cfg.link)?,
        _ => pmcsh_powers(&cfg.link, cfg.format)?,
    };
    let spec = ConstellationSpec::with_scale(cfg.format, rx.amp);
    let pol = if cfg.pol_enabled && cfg.format != Format::Pam4 {
        Some(build_pol_context(cfg, &rx)?)
    } else {
        None
    };

    let n_blocks = cfg.n_symbols.div_ceil(BLOCK_SYMBOLS);
    let counts = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let len = BLOCK_SYMBOLS.min(cfg.n_symbols - b * BLOCK_SYMBOLS);
            run_block(cfg, &spec, rx.sigma, pol.as_ref(), b, len)
        })
        .reduce(Counts::default, Counts::merge);

    let bits = cfg.n_symbols * u64::from(cfg.format.bits_per_symbol());
    let (ci_low, ci_high) = binomial_ci(counts.bit_errors, bits)?;
    Ok(SimResult {
        bit_errors: counts.bit_errors,
        bits,
        symbol_errors: counts.symbol_errors,
        ber: counts.bit_errors as f64 / bits as f64,
        ci_low,
        ci_high,
        below_resolution: counts.bit_errors == 0,
    })
}

fn run_block(
    cfg: &SimConfig,
    spec: &ConstellationSpec,
    sigma: f64,
    pol: Option<&PolContext>,
    block: u64,
    len: u64,
) -> Counts {
    let mut bits_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    bits_rng.set_stream(STREAM_BITS | block);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    noise_rng.set_stream(STREAM_NOISE | block);

    let m_mask = (spec.symbol_count() - 1) as u32;
    let mut counts = Counts::default();

    // Hot-path tables indexed by gray label.
    let points: Vec<(f64, f64)> = (0..spec.symbol_count())
        .map(|label| {
            let p = spec.point_of(spec.symbol_of_label(label as u8));
            (p.i, p.q)
        })
        .collect();
    // Unit-peak complex symbols for the optical field: the corner of the
    // alphabet carries the full signal power ps.
    let unit_fields: Vec<Complex64> = points
        .iter()
        .map(|&(i, q)| Complex64::new(i, q) / (spec.scale() * std::f64::consts::SQRT_2))
        .collect();

    for _ in 0..len {
        let tx_label = (bits_rng.next_u32() & m_mask) as u8;

        let rx_sym = match (spec.format(), pol) {
            (Format::Pam4, _) => {
                let n: f64 = noise_rng.sample(StandardNormal);
                let y = points[tx_label as usize].0 + sigma * n;
                decide_1d(spec, y)
            }
            (_, None) => {
                let ni: f64 = noise_rng.sample(StandardNormal);
                let nq: f64 = noise_rng.sample(StandardNormal);
                let (i, q) = points[tx_label as usize];
                decide_2d(spec, i + sigma * ni, q + sigma * nq)
            }
            (_, Some(ctx)) => {
                let ni: f64 = noise_rng.sample(StandardNormal);
                let nq: f64 = noise_rng.sample(StandardNormal);
                let field = JonesVector::new(
                    unit_fields[tx_label as usize] * ctx.sqrt_ps,
                    Complex64::new(ctx.sqrt_pc, 0.0),
                );
                let out = ctx.effective.apply(&field);
                let beat = ctx.gain_r * out.ex * out.ey.conj();
                let raw = beat + Complex64::new(sigma * ni, sigma * nq);
                let s = (raw - ctx.offset) * ctx.correction;
                decide_2d(spec, s.re, s.im)
            }
        };

        let rx_label = spec.label_of(rx_sym);
        let diff = (tx_label ^ rx_label).count_ones() as u64;
        counts.bit_errors += diff;
        counts.symbol_errors += u64::from(diff > 0);
    }
    counts
}

fn decide_1d(spec: &ConstellationSpec, y: f64) -> usize {
    spec.thresholds().iter().filter(|&&t| y >= t).count()
}

fn decide_2d(spec: &ConstellationSpec, i: f64, q: f64) -> usize {
    decide_1d(spec, i) + spec.levels().len() * decide_1d(spec, q)
}
