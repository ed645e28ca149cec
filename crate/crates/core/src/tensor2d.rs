//! Tensor-product grids on the unit square.
//!
//! On a `P x P` grid the 2D filter factorizes, `chi~_P(y1) chi~_P(y2)`, and
//! the bias of `f = sum c_{k1,k2} e^{2 pi i (k1 x1 + k2 x2)}` is the sum over
//! modes other than `(0, 0)` with both components divisible by `P`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RbfError, Result};
use crate::numeric::ComplexSum;
use crate::resonance::{character_orthogonality_check, chi_tilde, GridSize, RelativeFrequency};
use crate::spectrum::HERMITIAN_TOL;

pub type Mode2 = (i64, i64);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum2D {
    modes: BTreeMap<Mode2, Complex64>,
    symmetric_real: bool,
}

impl Spectrum2D {
    pub fn new<I>(modes: I, symmetric_real: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (Mode2, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in modes {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(RbfError::Domain(format!("coefficient of mode {k:?} is not finite")));
            }
            if map.insert(k, c).is_some() {
                return Err(RbfError::Format(format!("duplicate mode {k:?}")));
            }
        }
        let spec = Spectrum2D { modes: map, symmetric_real };
        if symmetric_real {
            for (&(a, b), &c) in &spec.modes {
                if (spec.coefficient((-a, -b)) - c.conj()).norm() > HERMITIAN_TOL {
                    return Err(RbfError::Contract(format!(
                        "declared real but mode ({a}, {b}) has no conjugate mirror"
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn coefficient(&self, k: Mode2) -> Complex64 {
        self.modes.get(&k).copied().unwrap_or_default()
    }

    pub fn modes(&self) -> impl Iterator<Item = (Mode2, Complex64)> + '_ {
        self.modes.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn symmetric_real(&self) -> bool {
        self.symmetric_real
    }

    /// Largest `max(|k1|, |k2|)` in the support.
    pub fn max_abs_mode(&self) -> Option<u64> {
        self.modes.keys().map(|&(a, b)| a.unsigned_abs().max(b.unsigned_abs())).max()
    }

    /// Reads `{"modes":[{"k1","k2","re","im"}]}`. The real flag is inferred:
    /// a file whose modes happen to be Hermitian is treated as real.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Spectrum2DFile =
            serde_json::from_str(text).map_err(|e| RbfError::Format(e.to_string()))?;
        let modes: Vec<(Mode2, Complex64)> =
            file.modes.into_iter().map(|m| ((m.k1, m.k2), Complex64::new(m.re, m.im))).collect();
        match Spectrum2D::new(modes.clone(), true) {
            Ok(s) => Ok(s),
            Err(RbfError::Contract(_)) => Spectrum2D::new(modes, false),
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self) -> String {
        let file = Spectrum2DFile {
            modes: self
                .modes()
                .map(|((k1, k2), c)| Mode2Entry { k1, k2, re: c.re, im: c.im })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("spectrum serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Spectrum2DFile {
    modes: Vec<Mode2Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Mode2Entry {
    k1: i64,
    k2: i64,
    re: f64,
    im: f64,
}

/// `chi~_P(y1) chi~_P(y2)`.
pub fn chi2d(p: GridSize, y1: RelativeFrequency, y2: RelativeFrequency) -> Complex64 {
    chi_tilde(p, y1) * chi_tilde(p, y2)
}

/// `sum_{k != 0} c_k chi~_P(k1/P) chi~_P(k2/P)` with the exact indicator.
pub fn bias_rbf_2d(spec: &Spectrum2D, p: GridSize) -> Result<Complex64> {
    let p = p.require_quadrature()?;
    let mut acc = ComplexSum::new();
    for ((a, b), c) in spec.modes() {
        if (a, b) == (0, 0) {
            continue;
        }
        let w = character_orthogonality_check(p, a) * character_orthogonality_check(p, b);
        if w == 1 {
            acc.add(c);
        }
    }
    Ok(acc.total())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AliasSum2D {
    pub value: Complex64,
    pub coverage_warning: bool,
}

/// `sum_{(l1,l2) != 0, |l_i| <= l_max} c_{(l1 P, l2 P)}`.
pub fn bias_classical_2d(spec: &Spectrum2D, p: GridSize, l_max: u64) -> Result<AliasSum2D> {
    let p = p.require_quadrature()?;
    if l_max == 0 {
        return Err(RbfError::Domain("l_max must be at least 1".into()));
    }
    let step = p.as_i64();
    let l = l_max as i64;
    let mut acc = ComplexSum::new();
    for l1 in -l..=l {
        for l2 in -l..=l {
            if (l1, l2) == (0, 0) {
                continue;
            }
            let (Some(a), Some(b)) = (l1.checked_mul(step), l2.checked_mul(step)) else {
                continue;
            };
            acc.add(spec.coefficient((a, b)));
        }
    }
    let reach = l_max.saturating_mul(p.get() as u64);
    Ok(AliasSum2D {
        value: acc.total(),
        coverage_warning: spec.max_abs_mode().is_some_and(|m| m > reach),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{direct_bias_2d, Builtin2D, PeriodicFunction2D};
    use proptest::prelude::*;

    fn g(p: usize) -> GridSize {
        GridSize::new(p).unwrap()
    }

    fn y(v: f64) -> RelativeFrequency {
        RelativeFrequency::new(v).unwrap()
    }

    // Independent oracle: the double phasor sum.
    fn chi2d_oracle(p: usize, y1: f64, y2: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j1 in 0..p {
            for j2 in 0..p {
                let t = 2.0 * std::f64::consts::PI * (y1 * j1 as f64 + y2 * j2 as f64);
                acc += Complex64::new(t.cos(), t.sin());
            }
        }
        acc / (p * p) as f64
    }

    #[test]
    fn chi2d_examples() {
        assert_eq!(chi2d(g(4), y(0.0), y(0.0)), Complex64::new(1.0, 0.0));
        assert_eq!(chi2d(g(4), y(1.0), y(0.25)).norm(), 0.0);
        let z = chi2d(g(6), y(0.37), y(-0.11));
        assert!((z - chi2d_oracle(6, 0.37, -0.11)).norm() < 1e-13);
    }

    #[test]
    fn prod_cos_bias_by_every_route() {
        let spec = Builtin2D::ProdCos8Pi.spectrum();
        for p in 2..=12usize {
            let rbf = bias_rbf_2d(&spec, g(p)).unwrap();
            let classical = bias_classical_2d(&spec, g(p), 4).unwrap();
            let direct = direct_bias_2d(&Builtin2D::ProdCos8Pi, g(p)).unwrap();
            let expected = if 4 % p == 0 { 1.0 } else { 0.0 };
            assert_eq!(rbf, Complex64::new(expected, 0.0), "P={p}");
            assert_eq!(classical.value, rbf, "P={p}");
            assert!((direct - expected).abs() < 1e-14, "P={p} direct={direct}");
        }
        assert!(Builtin2D::ProdCos8Pi.exact_integral() == Some(0.0));
    }

    #[test]
    fn coverage_warning_2d() {
        let spec = Spectrum2D::new([((9, 0), Complex64::new(1.0, 0.0))], false).unwrap();
        assert!(bias_classical_2d(&spec, g(3), 2).unwrap().coverage_warning);
        let full = bias_classical_2d(&spec, g(3), 3).unwrap();
        assert!(!full.coverage_warning);
        assert_eq!(full.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let spec = Builtin2D::ProdCos8Pi.spectrum();
        let text = spec.to_json();
        assert!(text.contains("\"k1\""));
        let back = Spectrum2D::from_json(&text).unwrap();
        assert_eq!(back, spec);
        let one_sided = r#"{"modes":[{"k1":1,"k2":2,"re":1.0,"im":0.5}]}"#;
        assert!(!Spectrum2D::from_json(one_sided).unwrap().symmetric_real());
        assert!(Spectrum2D::from_json("[]").is_err());
    }

    proptest! {
        #[test]
        fn factorization_matches_double_sum(p in 1usize..12, y1 in -2.0f64..2.0, y2 in -2.0f64..2.0) {
            let z = chi2d(g(p), y(y1), y(y2));
            prop_assert!((z - chi2d_oracle(p, y1, y2)).norm() < 1e-11);
        }

        #[test]
        fn random_spectra_routes_agree(
            modes in proptest::collection::btree_map((-30i64..30, -30i64..30), (-1.0f64..1.0, -1.0f64..1.0), 0..20),
            p in 2usize..10,
        ) {
            let spec = Spectrum2D::new(modes.into_iter().map(|(k, (a, b))| (k, Complex64::new(a, b))), false).unwrap();
            let rbf = bias_rbf_2d(&spec, g(p)).unwrap();
            let classical = bias_classical_2d(&spec, g(p), 30).unwrap();
            prop_assert!(!classical.coverage_warning);
            prop_assert!((rbf - classical.value).norm() < 1e-13);
        }
    }
}
