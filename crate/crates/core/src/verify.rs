//! The three reference cases: a non-integer prototype, a single aliased
//! cosine, and its tensor-product counterpart. Each bias is computed by
//! direct quadrature and by the spectral formulas.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::prototype::{bias_sin2, PrototypeParams};
use crate::quadrature::{direct_bias, direct_bias_2d, Builtin1D, Builtin2D};
use crate::resonance::GridSize;
use crate::spectrum::{bias_classical_alias, bias_rbf_general};
use crate::tensor2d::{bias_classical_2d, bias_rbf_2d};

/// Discrepancy at or above which `validate` reports failure.
pub const VALIDATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodValue {
    pub method: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCase {
    pub name: &'static str,
    #[serde(rename = "P")]
    pub p: usize,
    pub values: Vec<MethodValue>,
    pub max_diff: f64,
}

impl VerificationCase {
    fn new(name: &'static str, p: usize, values: Vec<MethodValue>) -> Self {
        let mut max_diff = 0.0f64;
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                max_diff = max_diff.max((a.value - b.value).abs());
            }
        }
        VerificationCase { name, p, values, max_diff }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_diff < tol
    }
}

fn real_part(z: Complex64) -> f64 {
    z.re
}

pub fn case_sin2() -> Result<VerificationCase> {
    let p = GridSize::new(20)?;
    let f = Builtin1D::Sin2 { k: 2.3 };
    let direct = direct_bias(&f, p)?;
    let theorem = bias_sin2(p, PrototypeParams::from_k(2.3)?)?;
    Ok(VerificationCase::new(
        "sin^2(2 pi 2.3 x)",
        20,
        vec![
            MethodValue { method: "direct", value: direct },
            MethodValue { method: "prototype", value: theorem },
        ],
    ))
}

pub fn case_cos() -> Result<VerificationCase> {
    let p = GridSize::new(4)?;
    let f = Builtin1D::Cos2PiN { n: 4 };
    let spec = f.spectrum().expect("finite spectrum");
    Ok(VerificationCase::new(
        "cos(8 pi x)",
        4,
        vec![
            MethodValue { method: "direct", value: direct_bias(&f, p)? },
            MethodValue { method: "rbf", value: real_part(bias_rbf_general(&spec, p)?) },
            MethodValue { method: "classical_alias", value: real_part(bias_classical_alias(&spec, p, 2)?.value) },
        ],
    ))
}

pub fn case_cos_2d() -> Result<VerificationCase> {
    let p = GridSize::new(4)?;
    let f = Builtin2D::ProdCos8Pi;
    let spec = f.spectrum();
    Ok(VerificationCase::new(
        "cos(8 pi x1) cos(8 pi x2)",
        4,
        vec![
            MethodValue { method: "direct_2d", value: direct_bias_2d(&f, p)? },
            MethodValue { method: "rbf_2d", value: real_part(bias_rbf_2d(&spec, p)?) },
            MethodValue { method: "classical_2d", value: real_part(bias_classical_2d(&spec, p, 2)?.value) },
        ],
    ))
}

pub fn verification_table() -> Result<Vec<VerificationCase>> {
    Ok(vec![case_sin2()?, case_cos()?, case_cos_2d()?])
}
