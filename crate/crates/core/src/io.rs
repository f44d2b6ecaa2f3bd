//! Serde models of the JSON input files.
//!
//! Complex numbers are `[re, im]` pairs and indices are 1-based.
//!
//! ```text
//! gram.json   { "dim": 2, "overlaps": [[1, 2, 0.5, 0.0]] }
//!             { "dim": 2, "matrix": [[1,0], [0.5,0], [0.5,0], [1,0]] }   row-major
//! basis.json  { "ambient_dim": 2, "vectors": [[[1,0],[0,0]], [[0.5,0],[0.866,0]]] }
//! state.json  { "gram": <gram.json>, "pure": [[1,0], [0.6,0]] }
//!             { "gram": <gram.json>, "rho": [[[0.6,0],[0.2,0]], [[0.2,0],[0.4,0]]] }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::gram::{GramMatrix, OverlapSpec};
use crate::linalg::ComplexMatrix;
use crate::ortho::BasisSet;
use crate::states::{DensityOperator, PureState};

/// Failure to turn a parsed file into a domain object.
#[derive(Debug, Error)]
pub enum LoadError {
    /// The document is well-formed JSON but violates the schema.
    #[error("{0}")]
    Schema(String),
    /// The content is well-formed but mathematically invalid.
    #[error(transparent)]
    Domain(#[from] Error),
}

pub type Pair = [f64; 2];

fn complex(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramFile {
    pub dim: usize,
    /// `[i, j, re]` or `[i, j, re, im]` with `1 <= i < j <= dim`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlaps: Option<Vec<Vec<f64>>>,
    /// Dense row-major matrix of `dim²` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Pair>>,
}

impl GramFile {
    pub fn to_gram(&self) -> Result<GramMatrix, LoadError> {
        match (&self.overlaps, &self.matrix) {
            (Some(_), Some(_)) => Err(LoadError::Schema(
                "gram: give either \"overlaps\" or \"matrix\", not both".into(),
            )),
            (None, None) => Ok(GramMatrix::from_overlaps(&OverlapSpec::new(self.dim, vec![]))?),
            (Some(rows), None) => Ok(GramMatrix::from_overlaps(&self.overlap_spec(rows)?)?),
            (None, Some(entries)) => {
                if entries.len() != self.dim * self.dim {
                    return Err(LoadError::Schema(format!(
                        "gram: dense matrix has {} entries, expected {}",
                        entries.len(),
                        self.dim * self.dim
                    )));
                }
                let m = ComplexMatrix::from_vec(self.dim, self.dim, entries.iter().map(complex).collect())
                    .map_err(|e| LoadError::Schema(format!("gram: {e}")))?;
                Ok(GramMatrix::new(m)?)
            }
        }
    }

    fn overlap_spec(&self, rows: &[Vec<f64>]) -> Result<OverlapSpec, LoadError> {
        let index = |x: f64| -> Result<usize, LoadError> {
            if x.fract() != 0.0 || x < 1.0 || x > self.dim as f64 {
                return Err(LoadError::Schema(format!(
                    "gram: overlap index {x} is not an integer in 1..={}",
                    self.dim
                )));
            }
            Ok(x as usize - 1)
        };
        let mut pairs = Vec::with_capacity(rows.len());
        for row in rows {
            let (i, j, z) = match row.as_slice() {
                [i, j, re] => (i, j, Complex64::new(*re, 0.0)),
                [i, j, re, im] => (i, j, Complex64::new(*re, *im)),
                _ => {
                    return Err(LoadError::Schema(format!(
                        "gram: overlap entry {row:?} must be [i, j, re] or [i, j, re, im]"
                    )))
                }
            };
            pairs.push((index(*i)?, index(*j)?, z));
        }
        Ok(OverlapSpec::new(self.dim, pairs))
    }

    /// Dense form of an existing Gram matrix.
    pub fn from_gram(gram: &GramMatrix) -> Self {
        Self {
            dim: gram.dim(),
            overlaps: None,
            matrix: Some(gram.matrix().as_slice().iter().copied().map(pair).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub ambient_dim: usize,
    /// Column vectors, each `ambient_dim` pairs long.
    pub vectors: Vec<Vec<Pair>>,
}

impl BasisFile {
    pub fn to_basis(&self) -> Result<BasisSet, LoadError> {
        if self.vectors.is_empty() {
            return Err(LoadError::Schema("basis: no vectors given".into()));
        }
        if let Some(k) = self.vectors.iter().position(|v| v.len() != self.ambient_dim) {
            return Err(LoadError::Schema(format!(
                "basis: vector {} has {} components, expected {}",
                k + 1,
                self.vectors[k].len(),
                self.ambient_dim
            )));
        }
        let columns: Vec<Vec<Complex64>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(complex).collect())
            .collect();
        let m = ComplexMatrix::from_columns(&columns).map_err(|e| LoadError::Schema(format!("basis: {e}")))?;
        Ok(BasisSet::new(m)?)
    }

    pub fn from_basis(basis: &BasisSet) -> Self {
        Self {
            ambient_dim: basis.ambient_dim(),
            vectors: basis
                .vectors()
                .columns()
                .into_iter()
                .map(|c| c.into_iter().map(pair).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub gram: GramFile,
    /// Superposition coefficients; rescaled so that `a†Oa = 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<Vec<Pair>>,
    /// Coefficient matrix as a list of rows; must have unit trace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<Pair>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl StateFile {
    pub fn to_state(&self) -> Result<LoadedState, LoadError> {
        let gram = self.gram.to_gram()?;
        match (&self.pure, &self.rho) {
            (Some(a), None) => {
                let raw: Vec<Complex64> = a.iter().map(complex).collect();
                if raw.len() != gram.dim() {
                    return Err(LoadError::Schema(format!(
                        "state: {} coefficients for dimension {}",
                        raw.len(),
                        gram.dim()
                    )));
                }
                Ok(LoadedState::Pure(PureState::normalize(gram, &raw)?))
            }
            (None, Some(rows)) => {
                let d = gram.dim();
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(LoadError::Schema(format!("state: rho must be {d}x{d}")));
                }
                let m = ComplexMatrix::from_vec(d, d, rows.iter().flatten().map(complex).collect())
                    .map_err(|e| LoadError::Schema(format!("state: {e}")))?;
                Ok(LoadedState::Mixed(DensityOperator::new(gram, m)?))
            }
            _ => Err(LoadError::Schema(
                "state: give exactly one of \"pure\" or \"rho\"".into(),
            )),
        }
    }
}
