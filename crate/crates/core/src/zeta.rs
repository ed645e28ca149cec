//! Riemann zeta at integer arguments `s >= 2`.

use crate::error::{RbfError, Result};
use crate::numeric::NeumaierSum;

const TAIL_TOL: f64 = 1e-17;

/// `zeta(s) = sum_{n >= 1} n^{-s}`.
///
/// The partial sum up to `N - 1` is closed with the midpoint tail
/// `(N - 1/2)^{1-s} / (s - 1)`, whose error is below `s N^{-s-1} / 24`.
/// `N` is the first value that pushes that error under `1e-17`; terms are
/// added smallest first.
pub fn riemann_zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(RbfError::Domain(format!("zeta({s}) diverges; need s >= 2")));
    }
    let sf = f64::from(s);
    let mut n: u64 = 8;
    while sf / 24.0 * (n as f64).powf(-sf - 1.0) >= TAIL_TOL {
        n *= 2;
    }
    let mut acc = NeumaierSum::new();
    acc.add((n as f64 - 0.5).powf(1.0 - sf) / (sf - 1.0));
    for k in (1..n).rev() {
        acc.add((k as f64).powf(-sf));
    }
    Ok(acc.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        assert!((riemann_zeta(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((riemann_zeta(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((riemann_zeta(6).unwrap() - PI.powi(6) / 945.0).abs() < 1e-15);
    }

    #[test]
    fn apery() {
        assert!((riemann_zeta(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-15);
    }

    #[test]
    fn large_s_tends_to_one() {
        assert_eq!(riemann_zeta(80).unwrap(), 1.0);
        assert!(riemann_zeta(1).is_err());
        assert!(riemann_zeta(0).is_err());
    }
}
