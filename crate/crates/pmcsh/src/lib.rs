//! Link-level simulator and analytic BER toolkit for short-reach optical
//! interconnects: PAM4 direct detection compared against polarization-
//! multiplexed-carrier self-homodyne (PMC-SH) QPSK and 16-QAM coherent
//! links, including the adaptive polarization-control loop that makes
//! PMC-SH practical.
//!
//! The crate is a library first; each major capability has a runnable
//! example:
//!
//! ```bash
//! cargo run --release -p pmcsh --example ideal_ebn0_curves
//! cargo run --release -p pmcsh --example link_budget_walkthrough
//! cargo run --release -p pmcsh --example laser_power_sweep
//! cargo run --release -p pmcsh --example monte_carlo_validation
//! cargo run --release -p pmcsh --example polarization_control
//! cargo run --release -p pmcsh --example end_to_end_pol_link
//! ```
//!
//! - **`ideal_ebn0_curves`** - textbook BER vs Eb/N0 for the three formats
//! - **`link_budget_walkthrough`** - powers, amplitudes, and noise through
//!   both receiver chains
//! - **`laser_power_sweep`** - analytic BER vs laser power under both
//!   insertion-loss presets, with required-power crossovers
//! - **`monte_carlo_validation`** - seeded simulation vs the closed forms
//! - **`polarization_control`** - gradient-descent EPC convergence traces
//! - **`end_to_end_pol_link`** - full PMC-SH QPSK link through a random
//!   channel rotation with the controller in the loop
//!
//! A thin `sweep` binary drives the same machinery from the command line
//! and writes CSV/SVG artifacts; see the README.
//!
//! # Module map
//!
//! - [`constellation`]: gray-coded PAM4/QPSK/16-QAM alphabets, symbol
//!   energies, ML decisions
//! - [`analytic`]: exact error probabilities, published closed forms, and
//!   ideal Eb/N0 curves
//! - [`budget`]: dB bookkeeping from laser power to electrical amplitude
//!   and thermal noise
//! - [`jones`]: dual-polarization field states, unitary channel rotations,
//!   PBS/PBC, SOP drift
//! - [`epc`]: the feedback polarization controller (gradient descent on a
//!   tapped monitor current)
//! - [`monte_carlo`]: seeded, block-parallel symbol-level simulation with
//!   Wilson confidence intervals
//! - [`sweep`]: parameter files, sweep orchestration, CSV/SVG emission

// Validation uses `!(x > 0.0)` so NaN fails the check along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod budget;
pub mod constellation;
pub mod epc;
pub mod error;
pub mod jones;
pub mod monte_carlo;
mod plot;
pub mod sweep;

pub use crate::budget::LinkParams;
pub use crate::constellation::Format;
pub use crate::error::{Error, Result};
pub use crate::monte_carlo::{SimConfig, SimResult};
