//! Jones calculus for the dual-polarization channel: two-component complex
//! field states, 2x2 unitary channel operators, polarization mux/demux with
//! PBS/PBC insertion loss, and the random state-of-polarization processes
//! the adaptive controller has to undo.
//!
//! Losses are scalar amplitude factors applied outside the unitary algebra,
//! so channel rotations conserve power exactly (to rounding).

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Tolerance on `U U^H = I` for matrices accepted as channel rotations.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Two-component complex field, x and y polarization amplitudes in sqrt(W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    pub ex: Complex64,
    pub ey: Complex64,
}

impl JonesVector {
    pub fn new(ex: Complex64, ey: Complex64) -> Self {
        JonesVector { ex, ey }
    }

    /// Total optical power |ex|^2 + |ey|^2 (W).
    pub fn power(&self) -> f64 {
        self.ex.norm_sqr() + self.ey.norm_sqr()
    }
}

/// Polarization axis selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// 2x2 complex operator; channel rotations are unitary by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesMatrix {
    pub xx: Complex64,
    pub xy: Complex64,
    pub yx: Complex64,
    pub yy: Complex64,
}

impl JonesMatrix {
    pub fn identity() -> Self {
        JonesMatrix {
            xx: Complex64::new(1.0, 0.0),
            xy: Complex64::new(0.0, 0.0),
            yx: Complex64::new(0.0, 0.0),
            yy: Complex64::new(1.0, 0.0),
        }
    }

    /// Real rotation by `theta`.
    pub fn rotator(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        JonesMatrix {
            xx: Complex64::new(c, 0.0),
            xy: Complex64::new(-s, 0.0),
            yx: Complex64::new(s, 0.0),
            yy: Complex64::new(c, 0.0),
        }
    }

    /// Wave plate at 0 degrees with retardance `phi`:
    /// diag(exp(-i phi/2), exp(i phi/2)).
    pub fn retarder(phi: f64) -> Self {
        JonesMatrix {
            xx: Complex64::from_polar(1.0, -phi / 2.0),
            xy: Complex64::new(0.0, 0.0),
            yx: Complex64::new(0.0, 0.0),
            yy: Complex64::from_polar(1.0, phi / 2.0),
        }
    }

    /// Rotator-retarder-rotator composition; spans every polarization
    /// rotation up to a global phase.
    pub fn from_angles(theta: f64, phi: f64, psi: f64) -> Self {
        Self::rotator(theta).compose(&Self::retarder(phi).compose(&Self::rotator(psi)))
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &JonesMatrix) -> JonesMatrix {
        JonesMatrix {
            xx: self.xx * other.xx + self.xy * other.yx,
            xy: self.xx * other.xy + self.xy * other.yy,
            yx: self.yx * other.xx + self.yy * other.yx,
            yy: self.yx * other.xy + self.yy * other.yy,
        }
    }

    pub fn apply(&self, v: &JonesVector) -> JonesVector {
        JonesVector {
            ex: self.xx * v.ex + self.xy * v.ey,
            ey: self.yx * v.ex + self.yy * v.ey,
        }
    }

    pub fn dagger(&self) -> JonesMatrix {
        JonesMatrix {
            xx: self.xx.conj(),
            xy: self.yx.conj(),
            yx: self.xy.conj(),
            yy: self.yy.conj(),
        }
    }

    /// Largest entry-wise deviation of `U U^H` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.compose(&self.dagger());
        let one = Complex64::new(1.0, 0.0);
        [
            (p.xx - one).norm(),
            p.xy.norm(),
            p.yx.norm(),
            (p.yy - one).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }
}

/// Apply a channel rotation, rejecting operators that are not unitary
/// within [`UNITARITY_TOL`].
pub fn rotate(v: &JonesVector, m: &JonesMatrix) -> Result<JonesVector> {
    if !m.is_unitary(UNITARITY_TOL) {
        return Err(Error::invalid(format!(
            "channel operator not unitary (error {:.3e})",
            m.unitarity_error()
        )));
    }
    Ok(m.apply(v))
}

/// Combine the modulated signal (x axis) and the carrier (y axis) through
/// one PBC pass with insertion loss `kb` (linear, >= 1).
pub fn mux(signal: Complex64, carrier: Complex64, kb: f64) -> JonesVector {
    debug_assert!(kb >= 1.0, "kb is a linear loss, expected >= 1");
    let s = kb.sqrt();
    JonesVector {
        ex: signal / s,
        ey: carrier / s,
    }
}

/// Separate the two polarization tributaries through one PBS pass with
/// insertion loss `kb`; returns (x branch, y branch).
pub fn pbs_split(v: &JonesVector, kb: f64) -> (Complex64, Complex64) {
    debug_assert!(kb >= 1.0, "kb is a linear loss, expected >= 1");
    let s = kb.sqrt();
    (v.ex / s, v.ey / s)
}

/// Power ratio in dB between the carrier axis and the orthogonal axis for
/// a carrier-only probe field. Perfect separation returns +inf.
pub fn extinction_ratio(v: &JonesVector, carrier_axis: Axis) -> f64 {
    debug_assert!(v.power() > 0.0, "extinction ratio needs a nonzero field");
    let (wanted, leaked) = match carrier_axis {
        Axis::X => (v.ex.norm_sqr(), v.ey.norm_sqr()),
        Axis::Y => (v.ey.norm_sqr(), v.ex.norm_sqr()),
    };
    if leaked == 0.0 {
        return f64::INFINITY;
    }
    10.0 * (wanted / leaked).log10()
}

/// Haar-uniform random polarization rotation, deterministic per seed.
pub fn random_sop(seed: u64) -> JonesMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sop_from(&mut rng)
}

/// Haar-uniform rotation drawn from an existing generator: a normalized
/// 4-component Gaussian quaternion mapped onto SU(2).
pub fn random_sop_from<R: Rng + ?Sized>(rng: &mut R) -> JonesMatrix {
    loop {
        let q: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let [a, b, c, d] = q.map(|x| x / norm);
        return JonesMatrix {
            xx: Complex64::new(a, b),
            xy: Complex64::new(c, d),
            yx: Complex64::new(-c, d),
            yy: Complex64::new(a, -b),
        };
    }
}

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(std::f64::consts::TAU);
    if y > std::f64::consts::PI {
        y - std::f64::consts::TAU
    } else {
        y
    }
}

/// State-of-polarization drift: a rotation-angle triple evolving as a
/// wrapped Gaussian random walk. `walk_std = 0` is a static rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopDrift {
    pub angles: [f64; 3],
    pub walk_std: f64,
}

impl SopDrift {
    pub fn new(angles: [f64; 3], walk_std: f64) -> Result<Self> {
        if angles.iter().any(|a| !a.is_finite()) || !(walk_std >= 0.0) {
            return Err(Error::invalid(
                "drift angles must be finite and walk_std >= 0",
            ));
        }
        Ok(SopDrift {
            angles: angles.map(wrap_angle),
            walk_std,
        })
    }

    /// Channel rotation at the current drift state.
    pub fn matrix(&self) -> JonesMatrix {
        JonesMatrix::from_angles(self.angles[0], self.angles[1], self.angles[2])
    }

    /// Advance one step of the random walk.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.walk_std == 0.0 {
            return;
        }
        for a in &mut self.angles {
            let dz: f64 = rng.sample(StandardNormal);
            *a = wrap_angle(*a + self.walk_std * dz);
        }
    }
}
