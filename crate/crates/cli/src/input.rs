//! Input schemas. Every command input derives both directions so reports can
//! echo exactly what was parsed.

use serde::{Deserialize, Serialize};

use cherednik::arith::parse_rational;
use cherednik::cheb::{AlgebraicParam, Parameter};
use cherednik::Rational;

use crate::CmdError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RootInput {
    Rational {
        value: String,
    },
    Algebraic {
        minpoly: Vec<i64>,
        label: String,
    },
    /// Residue coefficients over F_p, low degree first; needs `modulus`.
    Element {
        coeffs: Vec<i64>,
    },
}

impl RootInput {
    pub fn to_parameter(&self) -> Result<Parameter, CmdError> {
        Ok(match self {
            RootInput::Rational { value } => Parameter::Rational(rational(value)?),
            RootInput::Algebraic { minpoly, label } => {
                Parameter::Algebraic(AlgebraicParam::from_i64(minpoly, label.clone())?)
            }
            RootInput::Element { coeffs } => Parameter::Element(coeffs.clone()),
        })
    }
}

pub fn rational(s: &str) -> Result<Rational, CmdError> {
    parse_rational(s).map_err(|e| CmdError::Schema(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRoots {
    pub p: u64,
    pub roots: Vec<RootInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BruteForceInput {
    pub p: u64,
    pub roots: Vec<RootInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
    pub degree_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DunklInput {
    pub c: String,
    pub degree_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedRingInput {
    pub n: usize,
    #[serde(default = "default_image_degree")]
    pub degree_bound: usize,
}

fn default_image_degree() -> usize {
    12
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmInput {
    /// Catalog point: `A = diag(eigenvalues)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<String>>,
    /// Explicit pair, rows of rationals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub conjugations: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChebInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<i64>>,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GwaOp {
    Mul,
    Commutator,
    Normalize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwaInput {
    /// Omitted for rational coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub roots: Vec<RootInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
    pub op: GwaOp,
    pub a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

/// One corpus case: `{"command": ..., "input": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub command: String,
    pub input: serde_json::Value,
}
