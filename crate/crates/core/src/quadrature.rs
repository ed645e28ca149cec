//! Direct trapezoidal-rule evaluation on the uniform periodic grid, and the
//! registry of built-in integrands with known exact integrals.
//!
//! For a 1-periodic integrand the composite trapezoidal rule on `P` points
//! is the plain average of `f(j/P)`, `j = 0..P`. This module is the ground
//! truth every bias formula is checked against, so it never consults the
//! resonance machinery.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{RbfError, Result};
use crate::numeric::{cos_pi, sin_pi, NeumaierSum};
use crate::prototype::{exact_integral_sin2, PrototypeParams};
use crate::resonance::GridSize;
use crate::spectrum::FourierSpectrum;
use crate::tensor2d::Spectrum2D;

/// Above this many grid points the sums switch to compensated accumulation.
pub const COMPENSATED_THRESHOLD: usize = 10_000;

/// `int_0^1 exp(cos(2 pi x)) dx`, i.e. the modified Bessel value `I_0(1)`.
///
/// Frozen from the refinement oracle in this module's tests: compensated
/// trapezoid at N = 2^16 and N = 2^17, Richardson-combined, agreeing to
/// better than 1e-13 (they agree to the last bit). Cross-checked against the
/// power series of `I_0(1)`.
pub const EXPCOS_INTEGRAL: f64 = 1.266_065_877_752_008_4;

/// Largest mode kept in the analytic `expcos` spectrum; `I_100(1)` is
/// already below 1e-185.
pub const EXPCOS_MAX_MODE: i64 = 100;

/// A 1-periodic real function on `[0, 1)`.
pub trait PeriodicFunction {
    fn evaluate(&self, x: f64) -> f64;

    fn exact_integral(&self) -> Option<f64> {
        None
    }

    fn label(&self) -> String;
}

/// A real function on `[0, 1)^2`, 1-periodic in both arguments.
pub trait PeriodicFunction2D {
    fn evaluate(&self, x1: f64, x2: f64) -> f64;

    fn exact_integral(&self) -> Option<f64> {
        None
    }

    fn label(&self) -> String;
}

/// Wraps a closure as a [`PeriodicFunction`].
pub struct FnPeriodic<F> {
    label: String,
    exact: Option<f64>,
    f: F,
}

impl<F: Fn(f64) -> f64> FnPeriodic<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnPeriodic { label: label.into(), exact: None, f }
    }

    pub fn with_integral(mut self, exact: f64) -> Self {
        self.exact = Some(exact);
        self
    }
}

impl<F: Fn(f64) -> f64> PeriodicFunction for FnPeriodic<F> {
    fn evaluate(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn exact_integral(&self) -> Option<f64> {
        self.exact
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Wraps a closure as a [`PeriodicFunction2D`].
pub struct FnPeriodic2D<F> {
    label: String,
    exact: Option<f64>,
    f: F,
}

impl<F: Fn(f64, f64) -> f64> FnPeriodic2D<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnPeriodic2D { label: label.into(), exact: None, f }
    }

    pub fn with_integral(mut self, exact: f64) -> Self {
        self.exact = Some(exact);
        self
    }
}

impl<F: Fn(f64, f64) -> f64> PeriodicFunction2D for FnPeriodic2D<F> {
    fn evaluate(&self, x1: f64, x2: f64) -> f64 {
        (self.f)(x1, x2)
    }

    fn exact_integral(&self) -> Option<f64> {
        self.exact
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Built-in one-dimensional integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin1D {
    /// `sin^2(2 pi k x)`
    Sin2 { k: f64 },
    /// `cos(2 pi n x)`
    Cos2PiN { n: i64 },
    /// `exp(cos(2 pi x))`
    ExpCos,
}

/// Built-in two-dimensional integrands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin2D {
    /// `cos(8 pi x1) cos(8 pi x2)`
    ProdCos8Pi,
}

/// A registry lookup result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    OneD(Builtin1D),
    TwoD(Builtin2D),
}

impl Builtin {
    /// Looks up a registry name with its numeric parameters.
    ///
    /// `sin2` needs `k`, `cos2pin` needs `n`; the other two take none.
    pub fn lookup(name: &str, k: Option<f64>, n: Option<i64>) -> Result<Builtin> {
        match name {
            "sin2" => {
                let k = k.ok_or_else(|| RbfError::Contract("sin2 requires parameter k".into()))?;
                PrototypeParams::from_k(k)?;
                Ok(Builtin::OneD(Builtin1D::Sin2 { k }))
            }
            "cos2pin" => {
                let n = n.ok_or_else(|| RbfError::Contract("cos2pin requires parameter n".into()))?;
                Ok(Builtin::OneD(Builtin1D::Cos2PiN { n }))
            }
            "expcos" => Ok(Builtin::OneD(Builtin1D::ExpCos)),
            "prod_cos8pi" => Ok(Builtin::TwoD(Builtin2D::ProdCos8Pi)),
            other => Err(RbfError::UnknownFunction(other.to_string())),
        }
    }

    pub fn one_d(self) -> Result<Builtin1D> {
        match self {
            Builtin::OneD(f) => Ok(f),
            Builtin::TwoD(f) => Err(RbfError::Contract(format!("`{}` is two-dimensional", f.label()))),
        }
    }

    pub fn two_d(self) -> Result<Builtin2D> {
        match self {
            Builtin::TwoD(f) => Ok(f),
            Builtin::OneD(f) => Err(RbfError::Contract(format!("`{}` is one-dimensional", f.label()))),
        }
    }
}

/// Parses `sin2(2.3)`, `cos2pin(4)`, `expcos` and `prod_cos8pi`.
impl FromStr for Builtin {
    type Err = RbfError;

    fn from_str(s: &str) -> Result<Builtin> {
        let s = s.trim();
        let (name, arg) = match s.find('(') {
            Some(open) if s.ends_with(')') => (&s[..open], Some(s[open + 1..s.len() - 1].trim())),
            Some(_) => return Err(RbfError::Format(format!("unbalanced parentheses in `{s}`"))),
            None => (s, None),
        };
        let bad = |a: &str| RbfError::Format(format!("bad parameter `{a}` for `{name}`"));
        match (name, arg) {
            ("sin2", Some(a)) => Builtin::lookup(name, Some(a.parse().map_err(|_| bad(a))?), None),
            ("cos2pin", Some(a)) => Builtin::lookup(name, None, Some(a.parse().map_err(|_| bad(a))?)),
            ("expcos" | "prod_cos8pi", Some(a)) if !a.is_empty() => Err(bad(a)),
            _ => Builtin::lookup(name, None, None),
        }
    }
}

impl Builtin1D {
    /// Analytic Fourier spectrum, when it is finite (or, for `expcos`,
    /// truncated where the coefficients fall below 1e-185).
    ///
    /// `sin2` has a finite integer spectrum only when `m = 2k` is an integer.
    pub fn spectrum(&self) -> Option<FourierSpectrum> {
        let half = Complex64::new(0.5, 0.0);
        match *self {
            Builtin1D::Sin2 { k } => {
                let m = 2.0 * k;
                if m.fract() != 0.0 || m > i64::MAX as f64 / 2.0 {
                    return None;
                }
                let m = m as i64;
                let q = Complex64::new(-0.25, 0.0);
                FourierSpectrum::new([(0, half), (m, q), (-m, q)], true).ok()
            }
            Builtin1D::Cos2PiN { n } => {
                if n == 0 {
                    FourierSpectrum::new([(0, Complex64::new(1.0, 0.0))], true).ok()
                } else {
                    FourierSpectrum::new([(n, half), (-n, half)], true).ok()
                }
            }
            Builtin1D::ExpCos => {
                let modes = (-EXPCOS_MAX_MODE..=EXPCOS_MAX_MODE)
                    .map(|k| (k, Complex64::new(bessel_i_integer(k.unsigned_abs(), 1.0), 0.0)));
                FourierSpectrum::new(modes, true).ok()
            }
        }
    }
}

impl PeriodicFunction for Builtin1D {
    fn evaluate(&self, x: f64) -> f64 {
        match *self {
            Builtin1D::Sin2 { k } => sin_pi(2.0 * k * x).powi(2),
            Builtin1D::Cos2PiN { n } => cos_pi(2.0 * n as f64 * x),
            Builtin1D::ExpCos => cos_pi(2.0 * x).exp(),
        }
    }

    fn exact_integral(&self) -> Option<f64> {
        match *self {
            Builtin1D::Sin2 { k } => PrototypeParams::from_k(k).ok().map(exact_integral_sin2),
            Builtin1D::Cos2PiN { n } => Some(if n == 0 { 1.0 } else { 0.0 }),
            Builtin1D::ExpCos => Some(EXPCOS_INTEGRAL),
        }
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Builtin1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin1D::Sin2 { k } => write!(f, "sin2({k})"),
            Builtin1D::Cos2PiN { n } => write!(f, "cos2pin({n})"),
            Builtin1D::ExpCos => f.write_str("expcos"),
        }
    }
}

impl Builtin2D {
    pub fn spectrum(&self) -> Spectrum2D {
        match self {
            Builtin2D::ProdCos8Pi => {
                let q = Complex64::new(0.25, 0.0);
                Spectrum2D::new([((4, 4), q), ((4, -4), q), ((-4, 4), q), ((-4, -4), q)], true)
                    .expect("hermitian by construction")
            }
        }
    }
}

impl PeriodicFunction2D for Builtin2D {
    fn evaluate(&self, x1: f64, x2: f64) -> f64 {
        match self {
            Builtin2D::ProdCos8Pi => cos_pi(8.0 * x1) * cos_pi(8.0 * x2),
        }
    }

    fn exact_integral(&self) -> Option<f64> {
        Some(0.0)
    }

    fn label(&self) -> String {
        match self {
            Builtin2D::ProdCos8Pi => "prod_cos8pi".to_string(),
        }
    }
}

/// Modified Bessel function `I_k(x)` for integer order, by its power series.
///
/// These are the Fourier coefficients of `exp(x cos(2 pi t))`.
pub fn bessel_i_integer(k: u64, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^k / k!, built up without overflow
    let mut term = 1.0;
    for i in 1..=k {
        term *= half / i as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let q = half * half;
    let mut sum = 0.0;
    let mut j = 0u64;
    loop {
        sum += term;
        j += 1;
        term *= q / (j as f64 * (j + k) as f64);
        if term < sum * 1e-18 {
            return sum + term;
        }
    }
}

/// `(1/P) sum_j f(j/P)`.
pub fn trapezoid_1d<F: PeriodicFunction + ?Sized>(f: &F, p: GridSize) -> Result<f64> {
    let p = p.require_quadrature()?;
    let n = p.get();
    let pf = p.as_f64();
    let samples = (0..n).map(|j| f.evaluate(j as f64 / pf));
    let total = if n > COMPENSATED_THRESHOLD {
        samples.collect::<NeumaierSum>().total()
    } else {
        samples.sum::<f64>()
    };
    Ok(total / pf)
}

/// `(1/P^2) sum_{j1, j2} f(j1/P, j2/P)` on the square tensor-product grid.
pub fn trapezoid_2d<F: PeriodicFunction2D + ?Sized>(f: &F, p: GridSize) -> Result<f64> {
    let p = p.require_quadrature()?;
    let n = p.get();
    let pf = p.as_f64();
    let samples = (0..n).flat_map(|j1| (0..n).map(move |j2| (j1, j2)))
        .map(|(j1, j2)| f.evaluate(j1 as f64 / pf, j2 as f64 / pf));
    let total = if n * n > COMPENSATED_THRESHOLD {
        samples.collect::<NeumaierSum>().total()
    } else {
        samples.sum::<f64>()
    };
    Ok(total / (pf * pf))
}

/// `I_P[f] - I[f]`, computed by direct quadrature.
pub fn direct_bias<F: PeriodicFunction + ?Sized>(f: &F, p: GridSize) -> Result<f64> {
    let exact = f
        .exact_integral()
        .ok_or_else(|| RbfError::Contract(format!("`{}` has no exact integral", f.label())))?;
    Ok(trapezoid_1d(f, p)? - exact)
}

pub fn direct_bias_2d<F: PeriodicFunction2D + ?Sized>(f: &F, p: GridSize) -> Result<f64> {
    let exact = f
        .exact_integral()
        .ok_or_else(|| RbfError::Contract(format!("`{}` has no exact integral", f.label())))?;
    Ok(trapezoid_2d(f, p)? - exact)
}
