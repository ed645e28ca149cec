//! Closed-form analysis of the prototype integrand `f(x) = sin^2(2 pi k x)`.
//!
//! Writing `m = 2k`, `f = 1/2 - cos(2 pi m x)/2`. Its exact integral over
//! `[0, 1]` is `1/2 - C(m)` with `C(m) = sin(2 pi m) / (4 pi m)`, and the
//! `P`-point rule returns `1/2 - chi_P(m/P)/2`, so the bias is
//!
//! ```text
//! B_P = -chi_P(m/P)/2 + C(m)
//! ```
//!
//! `m` may be any positive real. For non-integer `m` the integrand is not
//! smooth across the period seam, which matters when comparing against
//! smoothness-based bounds.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{RbfError, Result};
use crate::resonance::{chi_real, GridSize, RelativeFrequency};

/// Below this effective frequency `C(m)` is evaluated by its series.
pub const CORRECTION_SERIES_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrototypeParams {
    k: f64,
    m: f64,
}

impl PrototypeParams {
    /// From the fundamental frequency `k`.
    pub fn from_k(k: f64) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(RbfError::Domain(format!("frequency k must be positive, got {k}")));
        }
        Ok(PrototypeParams { k, m: 2.0 * k })
    }

    /// From the effective frequency `m = 2k`.
    pub fn from_m(m: f64) -> Result<Self> {
        if !m.is_finite() || m <= 0.0 {
            return Err(RbfError::Domain(format!("frequency m must be positive, got {m}")));
        }
        Ok(PrototypeParams { k: 0.5 * m, m })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionTerm {
    pub m: f64,
    pub value: f64,
}

/// `C(m) = sin(2 pi m) / (4 pi m)`, the offset of the exact integral from 1/2.
///
/// Tends to 1/2 as `m -> 0`; below [`CORRECTION_SERIES_THRESHOLD`] the
/// two-term series `1/2 - (pi m)^2 / 3` is returned.
pub fn correction_term(m: f64) -> Result<CorrectionTerm> {
    if !m.is_finite() {
        return Err(RbfError::NonFinite { name: "m", value: m });
    }
    if m < 0.0 {
        return Err(RbfError::Domain(format!("frequency m must be non-negative, got {m}")));
    }
    let value = if m < CORRECTION_SERIES_THRESHOLD {
        0.5 - (PI * m).powi(2) / 3.0
    } else {
        crate::numeric::sin_pi(2.0 * m) / (4.0 * PI * m)
    };
    Ok(CorrectionTerm { m, value })
}

pub fn exact_integral_sin2(params: PrototypeParams) -> f64 {
    // m > 0 is guaranteed by construction
    0.5 - correction_term(params.m).map(|c| c.value).unwrap_or(0.5)
}

/// `S_P(m) = sum_j cos(2 pi m j / P) = P chi_P(m/P)`.
pub fn finite_cosine_sum(p: GridSize, m: f64) -> Result<f64> {
    let p = p.require_quadrature()?;
    let y = RelativeFrequency::new(m / p.as_f64())?;
    Ok(p.as_f64() * chi_real(p, y))
}

/// Exact trapezoidal bias of `sin^2(2 pi k x)` on `P` points.
pub fn bias_sin2(p: GridSize, params: PrototypeParams) -> Result<f64> {
    let p = p.require_quadrature()?;
    let y = RelativeFrequency::new(params.m / p.as_f64())?;
    let c = correction_term(params.m)?;
    Ok(-0.5 * chi_real(p, y) + c.value)
}

/// Smoothness-based bound `pi^2 m^2 / (3 P^2)` derived from `|f''| <= 4 pi^2 m^2`.
pub fn classical_bound_sin2(p: GridSize, params: PrototypeParams) -> f64 {
    let pf = p.as_f64();
    PI * PI * params.m * params.m / (3.0 * pf * pf)
}
