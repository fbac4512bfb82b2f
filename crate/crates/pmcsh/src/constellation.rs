//! Modulation formats: gray-coded PAM4, QPSK, and 16-QAM with amplitude
//! levels, symbol energies, and maximum-likelihood decision rules.
//!
//! PAM4 is the unipolar optical constellation {0, a/3, 2a/3, a}; QPSK and
//! 16-QAM are treated as two independent amplitude dimensions ({-a, a} and
//! {-a, -a/3, a/3, a} per dimension). Thresholds sit at midpoints of
//! adjacent levels, the ML rule for equal-variance Gaussian noise. Labels
//! use reflected-binary gray code per dimension, so nearest neighbors always
//! differ in exactly one bit.

use crate::error::{Error, Result};

/// The three compared modulation formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Pam4,
    Qpsk,
    Qam16,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Pam4, Format::Qpsk, Format::Qam16];

    /// Bits per symbol (m).
    pub fn bits_per_symbol(self) -> u32 {
        match self {
            Format::Pam4 | Format::Qpsk => 2,
            Format::Qam16 => 4,
        }
    }

    /// Constellation size (M = 2^m).
    pub fn symbol_count(self) -> usize {
        1 << self.bits_per_symbol()
    }

    /// Decision dimensions: 1 for PAM4, 2 for the quadrature formats.
    pub fn dimensions(self) -> u32 {
        match self {
            Format::Pam4 => 1,
            Format::Qpsk | Format::Qam16 => 2,
        }
    }
}

/// A constellation point; PAM4 uses only the in-phase coordinate (q = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub i: f64,
    pub q: f64,
}

/// Mean symbol energy and the derived per-bit energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolEnergy {
    /// Mean energy per symbol in amplitude^2 units.
    pub es: f64,
    /// Energy per bit, es / m.
    pub eb: f64,
}

/// A fully built modulation format: levels, ML thresholds, and gray map.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationSpec {
    format: Format,
    scale_a: f64,
    levels: Vec<f64>,
    thresholds: Vec<f64>,
    bit_map: Vec<u8>,
    sym_of_label: Vec<usize>,
}

fn gray(n: u32) -> u32 {
    n ^ (n >> 1)
}

/// Build the constellation for `format` with unit amplitude scale.
pub fn build_constellation(format: Format) -> ConstellationSpec {
    ConstellationSpec::with_scale(format, 1.0)
}

impl ConstellationSpec {
    /// Build with peak amplitude `a` (PAM4 top level, QPSK per-dimension
    /// level, or outer 16-QAM level).
    pub fn with_scale(format: Format, a: f64) -> Self {
        let levels: Vec<f64> = match format {
            Format::Pam4 => vec![0.0, a / 3.0, 2.0 * a / 3.0, a],
            Format::Qpsk => vec![-a, a],
            Format::Qam16 => vec![-a, -a / 3.0, a / 3.0, a],
        };
        let thresholds = levels
            .windows(2)
            .map(|w| (w[0] + w[1]) / 2.0)
            .collect::<Vec<_>>();

        let n = levels.len() as u32;
        let bits_per_dim = n.trailing_zeros();
        let m = format.bits_per_symbol();
        let big_m = format.symbol_count();
        let mut bit_map = vec![0u8; big_m];
        for (sym, word) in bit_map.iter_mut().enumerate() {
            let sym = sym as u32;
            *word = if format.dimensions() == 1 {
                gray(sym) as u8
            } else {
                let (i_idx, q_idx) = (sym % n, sym / n);
                ((gray(i_idx) << bits_per_dim) | gray(q_idx)) as u8
            };
        }
        let mut sym_of_label = vec![0usize; big_m];
        for (sym, &word) in bit_map.iter().enumerate() {
            sym_of_label[word as usize] = sym;
        }
        debug_assert_eq!(m, bits_per_dim * format.dimensions());

        ConstellationSpec {
            format,
            scale_a: a,
            levels,
            thresholds,
            bit_map,
            sym_of_label,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn scale(&self) -> f64 {
        self.scale_a
    }

    /// Per-dimension amplitude levels, ascending.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Per-dimension decision boundaries (midpoints of adjacent levels).
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.format.bits_per_symbol()
    }

    pub fn symbol_count(&self) -> usize {
        self.bit_map.len()
    }

    /// Gray label of a symbol index, as an m-bit word.
    pub fn label_of(&self, symbol: usize) -> u8 {
        self.bit_map[symbol]
    }

    /// Symbol index carrying the given gray label.
    pub fn symbol_of_label(&self, label: u8) -> usize {
        self.sym_of_label[label as usize]
    }

    /// Gray label of a symbol as a bit string, most significant bit first.
    pub fn bits_of(&self, symbol: usize) -> Vec<bool> {
        let word = self.bit_map[symbol];
        let m = self.bits_per_symbol();
        (0..m).rev().map(|k| (word >> k) & 1 == 1).collect()
    }

    /// Constellation point of a symbol index.
    pub fn point_of(&self, symbol: usize) -> Point {
        let n = self.levels.len();
        match self.format.dimensions() {
            1 => Point {
                i: self.levels[symbol],
                q: 0.0,
            },
            _ => Point {
                i: self.levels[symbol % n],
                q: self.levels[symbol / n],
            },
        }
    }

    /// Map a gray-coded bit string (length m, MSB first) to its point.
    pub fn map_bits(&self, bits: &[bool]) -> Result<Point> {
        let m = self.bits_per_symbol() as usize;
        if bits.len() != m {
            return Err(Error::invalid(format!(
                "bit string length {} does not match {} bits per symbol",
                bits.len(),
                m
            )));
        }
        let word = bits.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        Ok(self.point_of(self.symbol_of_label(word)))
    }

    fn decide_dim(&self, x: f64) -> usize {
        // A value exactly on a threshold goes to the higher region.
        self.thresholds.iter().filter(|&&t| x >= t).count()
    }

    /// ML decision: index of the region containing `received`.
    pub fn decide(&self, received: Point) -> Result<usize> {
        if !received.i.is_finite() || !received.q.is_finite() {
            return Err(Error::invalid(format!(
                "received point must be finite, got ({}, {})",
                received.i, received.q
            )));
        }
        let n = self.levels.len();
        Ok(match self.format.dimensions() {
            1 => self.decide_dim(received.i),
            _ => self.decide_dim(received.i) + n * self.decide_dim(received.q),
        })
    }

    /// Mean symbol energy: 7/18 a^2 (PAM4), 2 a^2 (QPSK), 10/9 a^2 (16-QAM).
    pub fn symbol_energy(&self) -> SymbolEnergy {
        let a2 = self.scale_a * self.scale_a;
        let es = match self.format {
            Format::Pam4 => 7.0 / 18.0 * a2,
            Format::Qpsk => 2.0 * a2,
            Format::Qam16 => 10.0 / 9.0 * a2,
        };
        SymbolEnergy {
            es,
            eb: es / self.bits_per_symbol() as f64,
        }
    }
}
