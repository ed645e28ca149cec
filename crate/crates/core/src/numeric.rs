//! Small floating-point helpers shared by the evaluation routines.
//!
//! The trigonometric helpers take their argument in half-turns (`sin_pi`)
//! or full turns (`cis_turns`) and reduce it exactly before calling the
//! libm routines, so that sampled roots of unity come out as exact zeros
//! and ones wherever the reduced argument lands on a quarter turn.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Neumaier's variant of Kahan compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated complex accumulator (independent real and imaginary parts).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// Distance from `y` to the nearest integer.
#[inline]
pub fn dist_to_integer(y: f64) -> f64 {
    (y - y.round()).abs()
}

/// Reduce `y` into `[0, 1)`.
#[inline]
pub fn frac_unit(y: f64) -> f64 {
    let r = y - y.floor();
    // y slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// `sin(pi * x)` with exact zeros at integers and exact ±1 at half-integers.
///
/// The argument is folded into `[-1/4, 1/4]` (sine) or `[0, 1/4]` around a
/// half-integer (cosine) using only exact subtractions, so the result keeps
/// full relative accuracy near the zeros.
pub fn sin_pi(x: f64) -> f64 {
    // x - 2*round(x/2) is exact for finite x
    let mut r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    if r == 0.0 {
        return 0.0;
    }
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else {
        (PI * (0.5 - r.abs())).cos().copysign(r)
    }
}

/// `cos(pi * x)` with exact values on the half-integer lattice.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x - 2.0 * (0.5 * x).round()).abs();
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

/// `exp(2 pi i t)` for an argument measured in turns.
#[inline]
pub fn cis_turns(t: f64) -> Complex64 {
    let two_t = 2.0 * (t - t.round());
    Complex64::new(cos_pi(two_t), sin_pi(two_t))
}
