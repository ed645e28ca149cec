//! Sparse Fourier spectra and the bias formulas built on them.
//!
//! For an absolutely convergent Fourier series `f = sum_k c_k e^{2 pi i k x}`
//! the trapezoidal bias on `P` points is the spectrum filtered by the grid
//! response,
//!
//! ```text
//! B_P[f] = sum_{k != 0} c_k chi~_P(k/P)
//! ```
//!
//! and because `chi~_P(k/P)` is the divisibility indicator for integer `k`,
//! this is the classical alias sum `sum_{l != 0} c_{lP}`. Both routes are
//! implemented independently: [`bias_rbf_general`] walks the spectrum and
//! filters each mode, [`bias_classical_alias`] looks up the lattice
//! `lP` directly.
//!
//! Infinite sums are realized with finite spectra and an explicit `l_max`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RbfError, Result};
use crate::numeric::{cis_turns, ComplexSum, NeumaierSum};
use crate::quadrature::PeriodicFunction;
use crate::resonance::{character_orthogonality_check, chi_tilde, GridSize, RelativeFrequency};
use crate::zeta::riemann_zeta;

/// Tolerance for the Hermitian check `c_{-k} = conj(c_k)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Above this value of `gamma * P` the exponential bound underflows.
pub const EXP_UNDERFLOW_LIMIT: f64 = 700.0;

/// A finite sparse map from mode index to complex coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierSpectrum {
    coefficients: BTreeMap<i64, Complex64>,
    symmetric_real: bool,
    source_n: Option<usize>,
}

impl FourierSpectrum {
    /// Builds a spectrum, rejecting duplicate modes and, when
    /// `symmetric_real` is declared, any mode whose mirror is not its
    /// conjugate to within [`HERMITIAN_TOL`].
    pub fn new<I>(modes: I, symmetric_real: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut coefficients = BTreeMap::new();
        for (k, c) in modes {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(RbfError::Domain(format!("coefficient of mode {k} is not finite")));
            }
            if coefficients.insert(k, c).is_some() {
                return Err(RbfError::Format(format!("duplicate mode {k}")));
            }
        }
        let spec = FourierSpectrum { coefficients, symmetric_real, source_n: None };
        if symmetric_real {
            spec.check_hermitian()?;
        }
        Ok(spec)
    }

    fn check_hermitian(&self) -> Result<()> {
        for (&k, &c) in &self.coefficients {
            let mirror = self.coefficient(-k);
            if (mirror - c.conj()).norm() > HERMITIAN_TOL {
                return Err(RbfError::Contract(format!(
                    "declared real but c_{{-{k}}} != conj(c_{k})"
                )));
            }
        }
        Ok(())
    }

    /// Records the DFT length the coefficients were estimated with.
    pub fn with_source_n(mut self, n: usize) -> Self {
        self.source_n = Some(n);
        self
    }

    /// `c_k`, zero for modes not stored.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.coefficients.get(&k).copied().unwrap_or_default()
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coefficients.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn symmetric_real(&self) -> bool {
        self.symmetric_real
    }

    pub fn source_n(&self) -> Option<usize> {
        self.source_n
    }

    /// Largest `|k|` in the support.
    pub fn max_abs_mode(&self) -> Option<u64> {
        self.coefficients.keys().map(|k| k.unsigned_abs()).max()
    }

    /// `sum |c_k|`.
    pub fn l1_norm(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm()).collect::<NeumaierSum>().total()
    }

    fn check_source_band(&self, p: GridSize, l_max: u64) -> Result<()> {
        if let Some(n) = self.source_n {
            let reach = l_max.saturating_mul(p.get() as u64);
            if reach >= (n / 2) as u64 {
                return Err(RbfError::Domain(format!(
                    "l_max * P = {reach} reaches the self-aliasing band of a spectrum estimated with N = {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpectrumFile =
            serde_json::from_str(text).map_err(|e| RbfError::Format(e.to_string()))?;
        let spec = FourierSpectrum::new(
            file.modes.into_iter().map(|m| (m.k, Complex64::new(m.re, m.im))),
            file.symmetric_real,
        )?;
        Ok(match file.source_n {
            Some(n) => spec.with_source_n(n),
            None => spec,
        })
    }

    pub fn to_json(&self) -> String {
        // adding 0.0 folds -0.0 into 0.0
        let file = SpectrumFile {
            modes: self.modes().map(|(k, c)| ModeEntry { k, re: c.re + 0.0, im: c.im + 0.0 }).collect(),
            symmetric_real: self.symmetric_real,
            source_n: self.source_n,
        };
        serde_json::to_string_pretty(&file).expect("spectrum serializes")
    }
}

/// On-disk spectrum layout.
#[derive(Debug, Serialize, Deserialize)]
struct SpectrumFile {
    modes: Vec<ModeEntry>,
    symmetric_real: bool,
    #[serde(rename = "source_N")]
    source_n: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModeEntry {
    k: i64,
    re: f64,
    im: f64,
}

/// How the grid filter is applied to each mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FilterMode {
    /// Exact divisibility indicator; only modes on the `P`-lattice survive.
    #[default]
    Indicator,
    /// Evaluate `chi~_P(k/P)` numerically for every mode.
    Diagnostic,
}

/// Grid response at integer mode `k` under the given filter mode.
pub fn grid_filter(p: GridSize, k: i64, mode: FilterMode) -> Complex64 {
    match mode {
        FilterMode::Indicator => Complex64::new(f64::from(character_orthogonality_check(p, k)), 0.0),
        FilterMode::Diagnostic => chi_tilde(p, RelativeFrequency::of_mode(k, p)),
    }
}

/// `sum_{k != 0} c_k chi~_P(k/P)` using the exact indicator filter.
pub fn bias_rbf_general(spec: &FourierSpectrum, p: GridSize) -> Result<Complex64> {
    bias_rbf_general_with(spec, p, FilterMode::Indicator)
}

pub fn bias_rbf_general_with(spec: &FourierSpectrum, p: GridSize, mode: FilterMode) -> Result<Complex64> {
    let p = p.require_quadrature()?;
    spec.check_source_band(p, 1)?;
    let mut acc = ComplexSum::new();
    for (k, c) in spec.modes().filter(|&(k, _)| k != 0) {
        acc.add(c * grid_filter(p, k, mode));
    }
    Ok(acc.total())
}

/// Result of a truncated alias sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AliasSum {
    pub value: Complex64,
    /// Set when `l_max * P` does not reach the largest stored mode.
    pub coverage_warning: bool,
}

/// `sum_{0 < |l| <= l_max} c_{lP}`.
pub fn bias_classical_alias(spec: &FourierSpectrum, p: GridSize, l_max: u64) -> Result<AliasSum> {
    let p = p.require_quadrature()?;
    if l_max == 0 {
        return Err(RbfError::Domain("l_max must be at least 1".into()));
    }
    spec.check_source_band(p, l_max)?;
    let step = p.as_i64();
    let mut acc = ComplexSum::new();
    for l in 1..=l_max as i64 {
        let Some(k) = l.checked_mul(step) else { break };
        acc.add(spec.coefficient(k));
        acc.add(spec.coefficient(-k));
    }
    let reach = l_max.saturating_mul(p.get() as u64);
    Ok(AliasSum {
        value: acc.total(),
        coverage_warning: spec.max_abs_mode().is_some_and(|m| m > reach),
    })
}

/// `sum_{l=1}^{l_max} 2 Re c_{lP}` for spectra of real functions.
pub fn bias_real_reduction(spec: &FourierSpectrum, p: GridSize, l_max: u64) -> Result<f64> {
    if !spec.symmetric_real() {
        return Err(RbfError::Contract("spectrum is not declared real (Hermitian)".into()));
    }
    let p = p.require_quadrature()?;
    if l_max == 0 {
        return Err(RbfError::Domain("l_max must be at least 1".into()));
    }
    spec.check_source_band(p, l_max)?;
    let step = p.as_i64();
    let mut acc = NeumaierSum::new();
    for l in 1..=l_max as i64 {
        let Some(k) = l.checked_mul(step) else { break };
        acc.add(2.0 * spec.coefficient(k).re);
    }
    Ok(acc.total())
}

/// The bias by every available route, with their worst disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasReport {
    pub rbf_bias: Complex64,
    pub classical_bias: Complex64,
    pub direct_bias: Option<f64>,
    pub max_pairwise_discrepancy: f64,
}

impl BiasReport {
    pub fn new(rbf_bias: Complex64, classical_bias: Complex64, direct_bias: Option<f64>) -> Self {
        let mut values = vec![rbf_bias, classical_bias];
        values.extend(direct_bias.map(|d| Complex64::new(d, 0.0)));
        let mut worst = 0.0f64;
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                worst = worst.max((a - b).norm());
            }
        }
        BiasReport { rbf_bias, classical_bias, direct_bias, max_pairwise_discrepancy: worst }
    }

    /// Computes all routes for `spec`, adding the direct quadrature bias
    /// when a function is supplied.
    pub fn compute<F: PeriodicFunction + ?Sized>(
        spec: &FourierSpectrum,
        p: GridSize,
        l_max: u64,
        f: Option<&F>,
    ) -> Result<Self> {
        let rbf = bias_rbf_general(spec, p)?;
        let classical = bias_classical_alias(spec, p, l_max)?.value;
        let direct = f.map(|f| crate::quadrature::direct_bias(f, p)).transpose()?;
        Ok(BiasReport::new(rbf, classical, direct))
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.max_pairwise_discrepancy < tol
    }
}

/// Estimates `c_k` for `|k| <= N/2 - 1` by a direct DFT of `N` samples.
pub fn estimate_spectrum_dft<F: PeriodicFunction + ?Sized>(
    f: &F,
    n: GridSize,
    drop_tol: f64,
) -> Result<FourierSpectrum> {
    let k_max = (n.get() / 2).saturating_sub(1) as u64;
    estimate_spectrum_dft_modes(f, n, k_max, drop_tol)
}

/// Direct DFT estimate of the modes `|k| <= k_max` of a real function.
///
/// `c_k = (1/N) sum_j f(j/N) e^{-2 pi i k j / N}`, computed in `O(N k_max)`
/// with a twiddle table. Negative modes are filled in as conjugates, so the
/// result is Hermitian exactly. Coefficients with modulus `<= drop_tol` are
/// dropped. Modes at or beyond `N/2` alias onto each other and are refused.
pub fn estimate_spectrum_dft_modes<F: PeriodicFunction + ?Sized>(
    f: &F,
    n: GridSize,
    k_max: u64,
    drop_tol: f64,
) -> Result<FourierSpectrum> {
    let n = n.require_quadrature()?;
    if drop_tol.is_nan() || drop_tol < 0.0 {
        return Err(RbfError::Domain(format!("drop_tol must be non-negative, got {drop_tol}")));
    }
    let len = n.get();
    if k_max >= (len / 2) as u64 {
        return Err(RbfError::Domain(format!(
            "mode {k_max} is at or above N/2 = {} for N = {len}",
            len / 2
        )));
    }
    let nf = n.as_f64();
    let samples: Vec<f64> = (0..len).map(|j| f.evaluate(j as f64 / nf)).collect();
    let twiddle: Vec<Complex64> = (0..len).map(|i| cis_turns(-(i as f64) / nf)).collect();

    let mut modes = Vec::with_capacity(2 * k_max as usize + 1);
    for k in 0..=k_max as usize {
        let mut acc = ComplexSum::new();
        let mut idx = 0usize;
        for &s in &samples {
            acc.add(twiddle[idx] * s);
            idx += k;
            if idx >= len {
                idx %= len;
            }
        }
        let c = acc.total() / nf;
        let c = if k == 0 { Complex64::new(c.re, 0.0) } else { c };
        if c.norm() <= drop_tol {
            continue;
        }
        modes.push((k as i64, c));
        if k > 0 {
            modes.push((-(k as i64), c.conj()));
        }
    }
    Ok(FourierSpectrum::new(modes, true)?.with_source_n(len))
}

/// Coefficient decay model `|c_k| <= C |k|^{-(s+1)}` or `|c_k| <= C e^{-gamma |k|}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DecayModel {
    Algebraic { s: u32, c: f64 },
    Exponential { gamma: f64, c: f64 },
}

impl DecayModel {
    pub fn algebraic(s: u32, c: f64) -> Result<Self> {
        if s == 0 {
            return Err(RbfError::Domain("s = 0 gives the divergent zeta(1)".into()));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(RbfError::Domain(format!("constant C must be positive, got {c}")));
        }
        Ok(DecayModel::Algebraic { s, c })
    }

    pub fn exponential(gamma: f64, c: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(RbfError::Domain(format!("rate gamma must be positive, got {gamma}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(RbfError::Domain(format!("constant C must be positive, got {c}")));
        }
        Ok(DecayModel::Exponential { gamma, c })
    }

    /// The bound on `|B_P|` implied by the model.
    pub fn bound(&self, p: GridSize) -> Result<f64> {
        match self {
            DecayModel::Algebraic { .. } => bound_algebraic(self, p),
            DecayModel::Exponential { .. } => bound_exponential(self, p).map(|b| b.value),
        }
    }

    /// Tightest exponential envelope of the spectrum's non-zero modes.
    ///
    /// `gamma` is the least-squares slope of `-ln|c_k|` against `|k|`; `C`
    /// is then raised until `C e^{-gamma |k|}` dominates every stored
    /// coefficient. With fewer than two distinct `|k|`, or a non-decaying
    /// fit, `gamma` falls back to 1.
    pub fn fit_exponential(spec: &FourierSpectrum) -> Result<Self> {
        let pts: Vec<(f64, f64)> = spec
            .modes()
            .filter(|&(k, c)| k > 0 || (k < 0 && !spec.symmetric_real()) && c.norm() > 0.0)
            .filter(|&(_, c)| c.norm() > 0.0)
            .map(|(k, c)| (k.unsigned_abs() as f64, c.norm().ln()))
            .collect();
        if pts.is_empty() {
            return Err(RbfError::Domain("spectrum has no non-zero modes to fit".into()));
        }
        let nf = pts.len() as f64;
        let mean_k = pts.iter().map(|p| p.0).sum::<f64>() / nf;
        let mean_l = pts.iter().map(|p| p.1).sum::<f64>() / nf;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mean_k).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mean_k) * (p.1 - mean_l)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let gamma = if slope < 0.0 { -slope } else { 1.0 };
        let log_c = pts.iter().map(|&(k, l)| l + gamma * k).fold(f64::NEG_INFINITY, f64::max);
        DecayModel::exponential(gamma, log_c.exp())
    }
}

/// `2 C zeta(s+1) P^{-s-1}`.
pub fn bound_algebraic(model: &DecayModel, p: GridSize) -> Result<f64> {
    match *model {
        DecayModel::Algebraic { s, c } => {
            if s == 0 {
                return Err(RbfError::Domain("s = 0 gives the divergent zeta(1)".into()));
            }
            let z = riemann_zeta(s + 1)?;
            Ok(2.0 * c * z * p.as_f64().powi(-(s as i32) - 1))
        }
        DecayModel::Exponential { .. } => {
            Err(RbfError::Contract("bound_algebraic needs an algebraic model".into()))
        }
    }
}

/// Value of the exponential bound, flagged when it underflows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentialBound {
    pub value: f64,
    pub underflow: bool,
}

/// `2 C e^{-gamma P} / (1 - e^{-gamma P})`.
pub fn bound_exponential(model: &DecayModel, p: GridSize) -> Result<ExponentialBound> {
    match *model {
        DecayModel::Exponential { gamma, c } => {
            let x = gamma * p.as_f64();
            if x > EXP_UNDERFLOW_LIMIT {
                return Ok(ExponentialBound { value: 0.0, underflow: true });
            }
            let q = (-x).exp();
            // 1 - e^{-x} without cancellation for small x
            let denom = -(-x).exp_m1();
            Ok(ExponentialBound { value: 2.0 * c * q / denom, underflow: false })
        }
        DecayModel::Algebraic { .. } => {
            Err(RbfError::Contract("bound_exponential needs an exponential model".into()))
        }
    }
}
