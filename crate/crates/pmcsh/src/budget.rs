//! Link budget: laser power through component insertion losses to electrical
//! amplitudes and noise levels at the receiver.
//!
//! Losses are configured in dB and converted to linear ratios exactly once,
//! at parameter load. All quantities in [`LinkParams`] are linear scale:
//! powers in W, losses as ratios >= 1, noise density in A/sqrt(Hz).
//!
//! Two receiver chains are modeled:
//!
//! * PAM4 direct detection: received optical power `pt / (a_fiber * km1)`
//!   on a single photodiode, thermal noise variance `2 nt^2 df`.
//! * PMC-SH coherent detection: signal power `ps = pt / (2 a kp kb^3 km)`
//!   and carrier power `pc = pt / (2 a kp kb^3)` beat on balanced
//!   photodetector pairs behind a 90-degree hybrid; the differential noise
//!   variance doubles to `4 nt^2 df` per quadrature.

use crate::constellation::Format;
use crate::error::{Error, Result};

/// Convert a dB ratio to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear ratio to dB.
pub fn linear_to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Convert dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Convert watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Transmitter, channel, and receiver parameters, all linear scale.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkParams {
    /// Transmitter laser power (W).
    pub pt: f64,
    /// Photodetector responsivity (A/W).
    pub responsivity: f64,
    /// Intensity (PAM4) modulator insertion loss, linear >= 1.
    pub km1: f64,
    /// QPSK modulator insertion loss, linear >= 1.
    pub km2: f64,
    /// 16-QAM modulator insertion loss, linear >= 1.
    pub km3: f64,
    /// PBS/PBC insertion loss per pass, linear >= 1.
    pub kb: f64,
    /// Polarization controller + hybrid insertion loss, linear >= 1.
    pub kp: f64,
    /// Fiber attenuation, linear >= 1.
    pub a_fiber: f64,
    /// Thermal noise current spectral density (A/sqrt(Hz)).
    pub nt: f64,
    /// Symbol rate (symbols/s).
    pub baud: f64,
    /// Receiver bandwidth (Hz).
    pub df: f64,
}

impl LinkParams {
    /// Baseline parameter set of the uncompensated-modulator comparison:
    /// R = 0.85, 50 GBaud, df = 0.7 B, km1 = 7 dB, km2 = 12 dB, km3 = 15 dB,
    /// kb = 0.5 dB, nt = 10 pW/sqrt(Hz), lossless fiber and controller,
    /// pt = 1 mW until overridden by a sweep.
    pub fn fig4_defaults() -> Self {
        let baud = 50e9;
        LinkParams {
            pt: 1e-3,
            responsivity: 0.85,
            km1: db_to_linear(7.0),
            km2: db_to_linear(12.0),
            km3: db_to_linear(15.0),
            kb: db_to_linear(0.5),
            kp: 1.0,
            a_fiber: 1.0,
            nt: 10e-12,
            baud,
            df: 0.7 * baud,
        }
    }

    /// Compensated-modulator variant: km2 = km3 = 7 dB, fiber 5 dB,
    /// controller + hybrid 2 dB; everything else as [`fig4_defaults`].
    ///
    /// [`fig4_defaults`]: LinkParams::fig4_defaults
    pub fn fig5_defaults() -> Self {
        LinkParams {
            km2: db_to_linear(7.0),
            km3: db_to_linear(7.0),
            kp: db_to_linear(2.0),
            a_fiber: db_to_linear(5.0),
            ..Self::fig4_defaults()
        }
    }

    /// Replace the laser power, keeping everything else.
    pub fn with_pt_dbm(mut self, pt_dbm: f64) -> Self {
        self.pt = dbm_to_watts(pt_dbm);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let losses = [
            ("km1", self.km1),
            ("km2", self.km2),
            ("km3", self.km3),
            ("kb", self.kb),
            ("kp", self.kp),
            ("a_fiber", self.a_fiber),
        ];
        for (name, v) in losses {
            if !v.is_finite() || v < 1.0 {
                return Err(Error::invalid(format!(
                    "{name} must be a finite linear loss >= 1, got {v}"
                )));
            }
        }
        if !(self.pt.is_finite() && self.pt > 0.0) {
            return Err(Error::invalid(format!("pt must be > 0 W, got {}", self.pt)));
        }
        if !(self.responsivity > 0.0 && self.responsivity <= 1.2) {
            return Err(Error::invalid(format!(
                "responsivity must be in (0, 1.2] A/W, got {}",
                self.responsivity
            )));
        }
        if !(self.nt.is_finite() && self.nt >= 0.0) {
            return Err(Error::invalid(format!("nt must be >= 0, got {}", self.nt)));
        }
        if !(self.baud > 0.0 && self.df > 0.0) {
            return Err(Error::invalid(format!(
                "baud and df must be > 0, got baud={} df={}",
                self.baud, self.df
            )));
        }
        Ok(())
    }

    /// Thermal noise standard deviation of a single photodiode (A),
    /// `sigma^2 = 2 nt^2 df`.
    pub fn sigma_single_pd(&self) -> f64 {
        self.nt * (2.0 * self.df).sqrt()
    }

    /// Thermal noise standard deviation per quadrature after balanced
    /// detection (A), `sigma^2 = 4 nt^2 df`.
    pub fn sigma_balanced(&self) -> f64 {
        2.0 * self.nt * self.df.sqrt()
    }
}

/// Optical powers and electrical scales seen by one receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceivedSignal {
    /// Modulated-signal optical power (W). Equals the full received power
    /// for PAM4 direct detection.
    pub ps: f64,
    /// Carrier optical power (W). For PAM4 this mirrors `ps`.
    pub pc: f64,
    /// Peak per-dimension electrical amplitude (A): PAM4's top level, the
    /// QPSK per-quadrature level, or the outer 16-QAM level.
    pub amp: f64,
    /// Noise standard deviation per decision dimension (A).
    pub sigma: f64,
}

/// Ratio of the PAM4 electrical peak level to `R * Pt / (a km1)`.
///
/// The top constellation level relates to the mean symbol energy by
/// `a^2 = (18/7) Es`; with the per-bit normalization `Es/m` folded in
/// (m = 2) the peak becomes `3/sqrt(7)` times the detected current.
pub const PAM4_PEAK_SCALE: f64 = 1.133_893_419_027_681_7; // 3/sqrt(7)

/// PAM4 direct-detection receiver: power chain plus electrical conversion.
pub fn pam4_received(p: &LinkParams) -> Result<ReceivedSignal> {
    p.validate()?;
    let prec = p.pt / (p.a_fiber * p.km1);
    Ok(ReceivedSignal {
        ps: prec,
        pc: prec,
        amp: PAM4_PEAK_SCALE * p.responsivity * prec,
        sigma: p.sigma_single_pd(),
    })
}

/// PMC-SH receiver powers and per-quadrature electrical scale for the
/// selected modulation (QPSK uses km2, 16-QAM uses km3).
pub fn pmcsh_powers(p: &LinkParams, format: Format) -> Result<ReceivedSignal> {
    p.validate()?;
    let km = match format {
        Format::Qpsk => p.km2,
        Format::Qam16 => p.km3,
        Format::Pam4 => {
            return Err(Error::invalid(
                "pmcsh_powers applies to the coherent formats, not PAM4",
            ))
        }
    };
    let shared = 2.0 * p.a_fiber * p.kp * p.kb.powi(3);
    let pc = p.pt / shared;
    let ps = pc / km;
    let beat = p.responsivity * (ps * pc).sqrt();
    // Per-quadrature level: the hybrid splits each field across I and Q, so a
    // symbol at 45 degrees lands at beat/sqrt(2) per dimension. The 16-QAM
    // modulator carries an additional sqrt(0.9) level-to-energy factor and a
    // 1/sqrt(2) drive scale (outer level a^2 = 0.9 Es, peak R Pt/sqrt(2)).
    let amp = match format {
        Format::Qpsk => beat / std::f64::consts::SQRT_2,
        Format::Qam16 => 0.45f64.sqrt() * beat,
        Format::Pam4 => unreachable!(),
    };
    Ok(ReceivedSignal {
        ps,
        pc,
        amp,
        sigma: p.sigma_balanced(),
    })
}

/// Differential current of one balanced photodetector pair fed directly with
/// the signal and carrier fields: `i1 - i2 = 2 R sqrt(Ps Pc) cos(theta_m)`.
pub fn bpd_differential(ps: f64, pc: f64, theta_m: f64, r: f64) -> Result<f64> {
    if ps < 0.0 || pc < 0.0 {
        return Err(Error::invalid(format!(
            "optical powers must be >= 0, got ps={ps} pc={pc}"
        )));
    }
    Ok(2.0 * r * (ps * pc).sqrt() * theta_m.cos())
}

/// Per-quadrature differential current behind the 90-degree hybrid, whose
/// 3 dB split leaves each quadrature's BPD with half of each field's power:
/// `R sqrt(Ps Pc) cos(theta_m)`.
pub fn hybrid_quadrature_current(ps: f64, pc: f64, theta_m: f64, r: f64) -> Result<f64> {
    Ok(bpd_differential(ps, pc, theta_m, r)? / 2.0)
}
