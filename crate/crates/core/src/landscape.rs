//! Row data behind the figures: the resonance landscape, bias sweeps, the
//! filter view of a spectrum and the 2D landscape grid, plus a small
//! deterministic CSV/JSON writer.

use std::fmt::Write as _;
use std::io;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{RbfError, Result};
use crate::numeric::dist_to_integer;
use crate::prototype::{bias_sin2, classical_bound_sin2, PrototypeParams};
use crate::quadrature::{direct_bias, Builtin1D};
use crate::resonance::{chi_real, chi_tilde, GridSize, RelativeFrequency};
use crate::spectrum::{
    bias_rbf_general, estimate_spectrum_dft, grid_filter, DecayModel, FilterMode, FourierSpectrum,
};

/// Tolerance for calling a sample a peak or a zero.
pub const CLASSIFY_TOL: f64 = 1e-9;

const DEDUP_TOL: f64 = 1e-12;

/// DFT length used to estimate a spectrum for the exponential envelope.
pub const ENVELOPE_DFT_SAMPLES: usize = 4096;

/// Estimated coefficients at or below this modulus are treated as noise.
pub const ENVELOPE_DROP_TOL: f64 = 1e-14;

/// Exponential envelope fitted to the DFT-estimated coefficients of `f`
/// that stand above the rounding floor.
pub fn fitted_envelope(f: &Builtin1D) -> Result<DecayModel> {
    let spec = estimate_spectrum_dft(f, GridSize::new(ENVELOPE_DFT_SAMPLES)?, ENVELOPE_DROP_TOL)?;
    DecayModel::fit_exponential(&spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Peak,
    Zero,
    Interior,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Peak => "peak",
            Classification::Zero => "zero",
            Classification::Interior => "interior",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeSample {
    pub y: f64,
    pub chi: f64,
    pub classification: Classification,
}

/// Samples `chi_P` on `n_points` uniform points of `[y_min, y_max]`, with
/// every `n/P` in range inserted exactly.
pub fn sample_landscape(p: GridSize, y_min: f64, y_max: f64, n_points: usize) -> Result<Vec<LandscapeSample>> {
    if !(y_min.is_finite() && y_max.is_finite()) || y_min >= y_max {
        return Err(RbfError::Domain(format!("need finite y_min < y_max, got [{y_min}, {y_max}]")));
    }
    if n_points < 2 {
        return Err(RbfError::Domain(format!("need at least 2 points, got {n_points}")));
    }
    let pf = p.as_f64();
    let span = y_max - y_min;
    let step = span / (n_points - 1) as f64;

    let mut rationals: Vec<f64> = Vec::new();
    let (lo, hi) = ((y_min * pf).ceil() as i64, (y_max * pf).floor() as i64);
    for n in lo..=hi {
        let y = n as f64 / pf;
        if y >= y_min && y <= y_max {
            rationals.push(y);
        }
    }

    let mut ys: Vec<f64> = (0..n_points)
        .map(|i| if i + 1 == n_points { y_max } else { y_min + span * i as f64 / (n_points - 1) as f64 })
        .filter(|y| rationals.iter().all(|r| (r - y).abs() > DEDUP_TOL))
        .collect();
    ys.extend(rationals);
    ys.sort_by(f64::total_cmp);
    ys.dedup_by(|a, b| (*a - *b).abs() <= DEDUP_TOL);

    let half_res = 0.5 * step;
    Ok(ys
        .into_iter()
        .map(|y| {
            let chi = chi_real(p, RelativeFrequency::new(y).expect("finite"));
            LandscapeSample { y, chi, classification: classify(p, y, chi, half_res) }
        })
        .collect())
}

fn classify(p: GridSize, y: f64, chi: f64, half_res: f64) -> Classification {
    if dist_to_integer(y) < half_res && (chi - 1.0).abs() < CLASSIFY_TOL {
        return Classification::Peak;
    }
    let n = (y * p.as_f64()).round();
    let near_rational = (y - n / p.as_f64()).abs() < half_res;
    if near_rational && (n as i64).rem_euclid(p.as_i64()) != 0 && chi.abs() < CLASSIFY_TOL {
        return Classification::Zero;
    }
    Classification::Interior
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "P")]
    pub p: usize,
    pub direct_error: f64,
    pub rbf_prediction: f64,
    pub classical_bound: f64,
}

/// How a sweep predicts and bounds the bias for one integrand.
#[derive(Debug, Clone)]
pub enum SweepPlan {
    Prototype(PrototypeParams),
    Spectral { spectrum: FourierSpectrum, envelope: DecayModel },
}

impl SweepPlan {
    pub fn for_builtin(f: &Builtin1D) -> Result<Self> {
        match *f {
            Builtin1D::Sin2 { k } => Ok(SweepPlan::Prototype(PrototypeParams::from_k(k)?)),
            _ => {
                let spectrum = f
                    .spectrum()
                    .ok_or_else(|| RbfError::Contract(format!("{f} has no known spectrum")))?;
                let envelope = fitted_envelope(f)?;
                Ok(SweepPlan::Spectral { spectrum, envelope })
            }
        }
    }

    pub fn row(&self, f: &Builtin1D, p: GridSize) -> Result<SweepRow> {
        let direct_error = direct_bias(f, p)?;
        let (rbf_prediction, classical_bound) = match self {
            SweepPlan::Prototype(params) => (bias_sin2(p, *params)?, classical_bound_sin2(p, *params)),
            SweepPlan::Spectral { spectrum, envelope } => {
                (bias_rbf_general(spectrum, p)?.re, envelope.bound(p)?)
            }
        };
        Ok(SweepRow { p: p.get(), direct_error, rbf_prediction, classical_bound })
    }
}

/// One row per `P` in `[p_min, p_max]`, ascending.
pub fn sweep_bias(f: &Builtin1D, p_min: usize, p_max: usize) -> Result<Vec<SweepRow>> {
    if p_min < 2 || p_min > p_max {
        return Err(RbfError::Domain(format!("need 2 <= pmin <= pmax, got [{p_min}, {p_max}]")));
    }
    let plan = SweepPlan::for_builtin(f)?;
    (p_min..=p_max).map(|p| plan.row(f, GridSize::new(p)?)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterViewRow {
    pub k: i64,
    #[serde(rename = "input_mag")]
    pub input_magnitude: f64,
    #[serde(rename = "filter_mag")]
    pub filter_magnitude: f64,
    #[serde(rename = "filtered_mag")]
    pub filtered_magnitude: f64,
    #[serde(skip)]
    pub filtered: Complex64,
}

/// Rows for `0 < |k| <= k_range`; the mean mode `k = 0` is not part of the
/// bias and is left out. The filter column is the exact indicator; see
/// [`filter_view_with`] for the numerically evaluated response.
pub fn filter_view(spec: &FourierSpectrum, p: GridSize, k_range: u64) -> Result<Vec<FilterViewRow>> {
    filter_view_with(spec, p, k_range, FilterMode::Indicator)
}

pub fn filter_view_with(
    spec: &FourierSpectrum,
    p: GridSize,
    k_range: u64,
    mode: FilterMode,
) -> Result<Vec<FilterViewRow>> {
    let p = p.require_quadrature()?;
    let r = i64::try_from(k_range).map_err(|_| RbfError::Domain("k_range too large".into()))?;
    Ok((-r..=r)
        .filter(|&k| k != 0)
        .map(|k| {
            let c = spec.coefficient(k);
            let h = grid_filter(p, k, mode);
            let filtered = c * h;
            FilterViewRow {
                k,
                input_magnitude: c.norm(),
                filter_magnitude: h.norm(),
                filtered_magnitude: filtered.norm(),
                filtered,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Landscape2DRow {
    pub y1: f64,
    pub y2: f64,
    pub re_product: f64,
    pub product_of_re: f64,
}

/// `n x n` grid over `[0, range]^2`, rows ordered by `y1` then `y2`.
///
/// Both `Re[chi~(y1) chi~(y2)]` and `chi(y1) chi(y2)` are exported; they
/// differ wherever both imaginary parts are non-zero.
pub fn sample_landscape_2d(p: GridSize, range: f64, n: usize) -> Result<Vec<Landscape2DRow>> {
    if n < 2 {
        return Err(RbfError::Domain(format!("need at least 2 points per axis, got {n}")));
    }
    if !(range > 0.0 && range.is_finite()) {
        return Err(RbfError::Domain(format!("range must be positive, got {range}")));
    }
    let axis: Vec<(f64, Complex64)> = (0..n)
        .map(|i| {
            let y = range * i as f64 / (n - 1) as f64;
            (y, chi_tilde(p, RelativeFrequency::new(y).expect("finite")))
        })
        .collect();
    let mut rows = Vec::with_capacity(n * n);
    for &(y1, a) in &axis {
        for &(y2, b) in &axis {
            rows.push(Landscape2DRow { y1, y2, re_product: (a * b).re, product_of_re: a.re * b.re });
        }
    }
    Ok(rows)
}

/// Decimal rendering used by every export: shortest round-trip digits,
/// `0` for both zeros, scientific notation outside `[1e-5, 1e17)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if (1e-5..1e17).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A row type with a fixed CSV schema.
pub trait CsvRow: Serialize {
    const HEADER: &'static str;

    fn fields(&self) -> Vec<String>;
}

impl CsvRow for LandscapeSample {
    const HEADER: &'static str = "y,chi,classification";

    fn fields(&self) -> Vec<String> {
        vec![format_number(self.y), format_number(self.chi), self.classification.as_str().into()]
    }
}

impl CsvRow for SweepRow {
    const HEADER: &'static str = "P,direct_error,rbf_prediction,classical_bound";

    fn fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            format_number(self.direct_error),
            format_number(self.rbf_prediction),
            format_number(self.classical_bound),
        ]
    }
}

impl CsvRow for FilterViewRow {
    const HEADER: &'static str = "k,input_mag,filter_mag,filtered_mag";

    fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            format_number(self.input_magnitude),
            format_number(self.filter_magnitude),
            format_number(self.filtered_magnitude),
        ]
    }
}

impl CsvRow for Landscape2DRow {
    const HEADER: &'static str = "y1,y2,re_product,product_of_re";

    fn fields(&self) -> Vec<String> {
        vec![
            format_number(self.y1),
            format_number(self.y2),
            format_number(self.re_product),
            format_number(self.product_of_re),
        ]
    }
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(R::HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.fields().join(","));
    }
    out
}

pub fn to_json<R: CsvRow>(rows: &[R]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn write_csv<R: CsvRow, W: io::Write>(rows: &[R], mut w: W) -> io::Result<()> {
    w.write_all(to_csv(rows).as_bytes())
}
