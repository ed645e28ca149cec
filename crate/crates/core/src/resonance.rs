//! The grid resonance function.
//!
//! For a grid of `P` points the complex resonance function is the centroid
//! of the `P` unit phasors `exp(2 pi i y j)`, `j = 0..P`:
//!
//! ```text
//! chi~_P(y) = (1/P) * sum_j exp(2 pi i y j)
//!           = (1/P) * exp(i pi (P-1) y) * sin(pi P y) / sin(pi y)
//! ```
//!
//! It is 1-periodic, equals 1 on the integers, vanishes at `n/P` for
//! `n` not divisible by `P`, and never leaves the closed unit disk. The real
//! resonance function `chi_P` is its real part.
//!
//! Two evaluation routes are provided. [`chi_tilde_naive`] sums the phasors
//! directly. [`chi_tilde_closed`] uses the sine ratio away from the integers
//! and falls back to the direct sum inside a guard band where `sin(pi y)`
//! would lose digits.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RbfError, Result};
use crate::numeric::{cis_turns, cos_pi, dist_to_integer, frac_unit, sin_pi, ComplexSum};

/// Below this distance to the nearest integer the value is exactly 1.
pub const INTEGER_LIMIT_TOL: f64 = 1e-12;

/// Below this distance the closed form is replaced by the direct sum.
pub const GUARD_BAND: f64 = 1e-6;

/// Number of quadrature points / samples. Always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GridSize(usize);

impl GridSize {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(RbfError::GridTooSmall { min: 1, got: 0 });
        }
        Ok(GridSize(p))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    /// Checks the `P >= 2` precondition of the trapezoidal-rule operations.
    pub fn require_quadrature(self) -> Result<Self> {
        if self.0 < 2 {
            return Err(RbfError::GridTooSmall { min: 2, got: self.0 });
        }
        Ok(self)
    }
}

impl TryFrom<usize> for GridSize {
    type Error = RbfError;

    fn try_from(p: usize) -> Result<Self> {
        GridSize::new(p)
    }
}

impl From<GridSize> for usize {
    fn from(p: GridSize) -> usize {
        p.0
    }
}

/// Frequency measured relative to the sampling frequency. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RelativeFrequency(f64);

impl RelativeFrequency {
    pub fn new(y: f64) -> Result<Self> {
        if !y.is_finite() {
            return Err(RbfError::NonFinite { name: "y", value: y });
        }
        Ok(RelativeFrequency(y))
    }

    /// The relative frequency `k / P` of integer mode `k`.
    pub fn of_mode(k: i64, p: GridSize) -> Self {
        RelativeFrequency(k as f64 / p.as_f64())
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Which evaluation route produced a [`ResonanceValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    NaiveSum,
    ClosedForm,
    IntegerLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceValue {
    pub value: Complex64,
    pub branch: Branch,
}

/// The `P` phasors of the rotating-arrows picture and their centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrowsDecomposition {
    pub arrows: Vec<Complex64>,
    pub centroid: Complex64,
}

// Phasor sum over the reduced argument r in [0, 1).
fn phasor_mean(p: GridSize, r: f64) -> Complex64 {
    let mut acc = ComplexSum::new();
    for j in 0..p.get() {
        acc.add(cis_turns(r * j as f64));
    }
    acc.total() / p.as_f64()
}

/// Direct summation of the defining sum.
pub fn chi_tilde_naive(p: GridSize, y: RelativeFrequency) -> ResonanceValue {
    ResonanceValue {
        value: phasor_mean(p, frac_unit(y.get())),
        branch: Branch::NaiveSum,
    }
}

/// Closed-form evaluation with the integer limit and the near-integer
/// guard band handled separately.
pub fn chi_tilde_closed(p: GridSize, y: RelativeFrequency) -> ResonanceValue {
    let d = dist_to_integer(y.get());
    if d <= INTEGER_LIMIT_TOL {
        return ResonanceValue {
            value: Complex64::new(1.0, 0.0),
            branch: Branch::IntegerLimit,
        };
    }
    if d <= GUARD_BAND {
        return ResonanceValue {
            value: phasor_mean(p, frac_unit(y.get())),
            branch: Branch::NaiveSum,
        };
    }
    // signed offset from the nearest integer, exact
    let s = y.get() - y.get().round();
    let pf = p.as_f64();
    let ratio = sin_pi(pf * s) / sin_pi(s);
    let half_turns = (pf - 1.0) * s;
    let phase = Complex64::new(cos_pi(half_turns), sin_pi(half_turns));
    ResonanceValue {
        value: phase * (ratio / pf),
        branch: Branch::ClosedForm,
    }
}

/// Complex resonance value by the default (closed-form) route.
#[inline]
pub fn chi_tilde(p: GridSize, y: RelativeFrequency) -> Complex64 {
    chi_tilde_closed(p, y).value
}

/// The real resonance function `chi_P(y) = Re chi~_P(y)`.
pub fn chi_real(p: GridSize, y: RelativeFrequency) -> f64 {
    chi_tilde_closed(p, y).value.re
}

/// Quadratic model of the resonance lobe around the integer `k`:
/// `1 - pi^2 (P-1)(2P-1) eps^2 / 3`.
///
/// This is a model for inspecting the lobe shape. No other routine uses it
/// in place of [`chi_real`].
pub fn chi_taylor_lobe(p: GridSize, _k: i64, eps: f64) -> f64 {
    let pf = p.as_f64();
    1.0 - PI * PI * (pf - 1.0) * (2.0 * pf - 1.0) * eps * eps / 3.0
}

/// Exact second derivative of `chi_P` at any integer.
pub fn chi_second_derivative_at_integer(p: GridSize) -> f64 {
    let pf = p.as_f64();
    -2.0 * PI * PI * (pf - 1.0) * (2.0 * pf - 1.0) / 3.0
}

pub fn arrows(p: GridSize, y: RelativeFrequency) -> ArrowsDecomposition {
    let r = frac_unit(y.get());
    let arrows: Vec<Complex64> = (0..p.get()).map(|j| cis_turns(r * j as f64)).collect();
    let mut acc = ComplexSum::new();
    for &a in &arrows {
        acc.add(a);
    }
    ArrowsDecomposition {
        centroid: acc.total() / p.as_f64(),
        arrows,
    }
}

/// Character orthogonality on `Z/PZ`: 1 if `P | k`, else 0.
///
/// This is the exact value of `chi~_P(k/P)` for integer `k`.
#[inline]
pub fn character_orthogonality_check(p: GridSize, k: i64) -> u8 {
    u8::from(k.rem_euclid(p.as_i64()) == 0)
}
