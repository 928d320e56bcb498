//! JSON artifacts. Every index in these formats is 1-based.

use std::fs;
use std::path::Path;

use majorize_core::matrix::classify_matrix;
use majorize_core::preservers::{Injection, InjectionFamily, PreserverSpec, TruncatedOperator};
use majorize_core::relations::{Violation, ViolationKind};
use majorize_core::{
    IncreasabilityCertificate, NonNegVector, RelationVerdict, StochMatrix,
    TTransformChain,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] majorize_core::Error),
}

pub type FormatResult<T> = Result<T, FormatError>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> FormatResult<T> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> FormatResult<()> {
    fs::write(path, to_pretty(value) + "\n").map_err(|source| FormatError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("artifacts serialize")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dim: usize,
    pub values: Vec<f64>,
}

impl VectorJson {
    pub fn from_vector(v: &NonNegVector) -> Self {
        Self {
            dim: v.dim(),
            values: v.values().to_vec(),
        }
    }

    pub fn to_vector(&self) -> FormatResult<NonNegVector> {
        if self.values.len() != self.dim {
            return Err(FormatError::Invalid(format!(
                "vector declares dim {} but has {} values",
                self.dim,
                self.values.len()
            )));
        }
        NonNegVector::new(self.values.clone()).map_err(|e| match e {
            majorize_core::Error::NegativeEntry { index, value } => FormatError::Invalid(format!(
                "negative value {value} at position {}",
                index + 1
            )),
            majorize_core::Error::NonFinite { index } => {
                FormatError::Invalid(format!("non-finite value at position {}", index + 1))
            }
            other => other.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    /// Row-major, `n²` entries.
    pub data: Vec<f64>,
    /// Ignored on input; the class is always recomputed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

impl MatrixJson {
    pub fn from_matrix(m: &StochMatrix) -> Self {
        Self {
            n: m.n(),
            data: m.data().to_vec(),
            class: Some(m.class().as_str().to_owned()),
        }
    }

    pub fn to_matrix(&self, tol: f64) -> FormatResult<StochMatrix> {
        if self.data.len() != self.n * self.n {
            return Err(FormatError::Invalid(format!(
                "matrix declares n = {} but has {} entries (expected {})",
                self.n,
                self.data.len(),
                self.n * self.n
            )));
        }
        Ok(classify_matrix(self.n, self.data.clone(), tol)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub base: MatrixJson,
    pub completion: MatrixJson,
    pub steps: usize,
}

impl CertificateJson {
    pub fn from_certificate(c: &IncreasabilityCertificate) -> Self {
        Self {
            base: MatrixJson::from_matrix(&c.base),
            completion: MatrixJson::from_matrix(&c.completion),
            steps: c.steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub i: usize,
    pub j: usize,
    pub t: f64,
}

/// A T-transform chain. `steps` act on the decreasing rearrangements:
/// `source[k]` and `target[k]` are the positions of the `k`-th largest
/// entries of `g` and `f`. `product` is the witness in the original
/// coordinates, so `product · g = f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    pub steps: Vec<StepJson>,
    pub product: MatrixJson,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl ChainJson {
    pub fn from_chain(c: &TTransformChain) -> Self {
        Self {
            steps: c
                .steps
                .iter()
                .map(|s| StepJson {
                    i: s.i + 1,
                    j: s.j + 1,
                    t: s.t,
                })
                .collect(),
            product: MatrixJson::from_matrix(&c.product),
            source: c.source.iter().map(|i| i + 1).collect(),
            target: c.target.iter().map(|i| i + 1).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub rows: usize,
    pub cols: usize,
    /// `[row, column, value]` triples of the positive entries.
    pub entries: Vec<(usize, usize, f64)>,
}

impl OperatorJson {
    pub fn from_operator(op: &TruncatedOperator) -> Self {
        Self {
            rows: op.rows(),
            cols: op.cols(),
            entries: op.entries().map(|(i, j, v)| (i + 1, j + 1, v)).collect(),
        }
    }

    pub fn to_operator(&self) -> FormatResult<TruncatedOperator> {
        let mut op = TruncatedOperator::zeros(self.rows, self.cols)?;
        for &(i, j, v) in &self.entries {
            if i == 0 || j == 0 || i > self.rows || j > self.cols {
                return Err(FormatError::Invalid(format!(
                    "entry ({i}, {j}) outside a {} x {} operator",
                    self.rows, self.cols
                )));
            }
            op.set(i - 1, j - 1, v).map_err(|_| {
                FormatError::Invalid(format!("invalid value {v} at ({i}, {j})"))
            })?;
        }
        Ok(op)
    }
}

/// Input accepted by `classify`: an operator or a square matrix.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OperatorInput {
    Operator(OperatorJson),
    Matrix(MatrixJson),
}

impl OperatorInput {
    pub fn to_operator(&self) -> FormatResult<TruncatedOperator> {
        match self {
            OperatorInput::Operator(o) => o.to_operator(),
            OperatorInput::Matrix(m) => {
                if m.data.len() != m.n * m.n {
                    return Err(FormatError::Invalid(format!(
                        "matrix declares n = {} but has {} entries",
                        m.n,
                        m.data.len()
                    )));
                }
                TruncatedOperator::from_dense(m.n, m.n, &m.data)
                    .map_err(|e| FormatError::Invalid(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreserverSpecJson {
    pub p: f64,
    pub weights: Vec<f64>,
    /// One list per injection: the images of `1..=domainDim`.
    pub injections: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<f64>>,
}

impl PreserverSpecJson {
    pub fn from_spec(spec: &PreserverSpec) -> Self {
        Self {
            p: spec.p(),
            weights: spec.weights().to_vec(),
            injections: spec
                .family()
                .members()
                .iter()
                .map(|t| t.images().iter().map(|i| i + 1).collect())
                .collect(),
            h: spec.constant_row().map(|h| h.values().to_vec()),
        }
    }

    pub fn to_spec(&self) -> FormatResult<PreserverSpec> {
        let members = self
            .injections
            .iter()
            .enumerate()
            .map(|(k, images)| {
                if let Some(pos) = images.iter().position(|&i| i == 0) {
                    return Err(FormatError::Invalid(format!(
                        "injection {} maps {} to 0; images are 1-based",
                        k + 1,
                        pos + 1
                    )));
                }
                Injection::new(images.iter().map(|i| i - 1).collect()).map_err(|e| {
                    FormatError::Invalid(format!("injection {}: {}", k + 1, one_based(e)))
                })
            })
            .collect::<FormatResult<Vec<_>>>()?;
        let family =
            InjectionFamily::new(members).map_err(|e| FormatError::Invalid(one_based(e)))?;
        let h = match &self.h {
            Some(h) => Some(
                VectorJson {
                    dim: h.len(),
                    values: h.clone(),
                }
                .to_vector()?,
            ),
            None => None,
        };
        PreserverSpec::new(self.p, self.weights.clone(), family, h)
            .map_err(|e| FormatError::Invalid(format!("invalid spec: {e}")))
    }
}

/// Renders index-carrying core errors with 1-based positions.
fn one_based(e: majorize_core::Error) -> String {
    use majorize_core::preservers::FamilyViolation;
    use majorize_core::Error as E;
    match e {
        E::NotInjective { first, second } => format!(
            "positions {} and {} share an image",
            first + 1,
            second + 1
        ),
        E::InvalidFamily(FamilyViolation::Collision {
            member,
            index,
            other_member,
            other_index,
            image,
        }) => format!(
            "injections {} and {} both reach {} (from {} and {})",
            member + 1,
            other_member + 1,
            image + 1,
            index + 1,
            other_index + 1
        ),
        E::InvalidFamily(FamilyViolation::DomainMismatch {
            member,
            expected,
            found,
        }) => format!(
            "injection {} has domain {found}, expected {expected}",
            member + 1
        ),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub kind: String,
    /// Number of largest entries in the failing partial sum.
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl ViolationJson {
    pub fn from_violation(v: &Violation) -> Self {
        Self {
            kind: match v.kind {
                ViolationKind::PrefixSum => "prefix-sum",
                ViolationKind::Total => "total",
            }
            .to_owned(),
            index: v.index + 1,
            lhs: v.lhs,
            rhs: v.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub relation: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
}

impl VerdictJson {
    pub fn from_verdict(v: &RelationVerdict, f: &NonNegVector, g: &NonNegVector) -> Self {
        Self {
            relation: v.relation.as_str().to_owned(),
            holds: v.holds,
            witness: v.witness.as_ref().map(MatrixJson::from_matrix),
            certificate: v.certificate.as_ref().map(CertificateJson::from_certificate),
            residual: v.residual(f, g),
            violation: v.violation.as_ref().map(ViolationJson::from_violation),
        }
    }
}
