//! Overlap (Gram) matrices `O_ij = ⟨c_i|c_j⟩`.
//!
//! The inner product is conjugate-linear in its first argument throughout the
//! crate, so `O_ij = Σ_k conj(c_i[k]) · c_j[k]`.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eig, ComplexMatrix, HermitianEigen, MatrixPower, LAMBDA_FLOOR,
};

/// Unit-diagonal tolerance for Gram matrices and unit-norm basis vectors.
pub const UNIT_TOLERANCE: f64 = 1e-10;

/// Rejection budget of [`GramMatrix::random`].
pub const MAX_DRAWS: usize = 1000;

/// Environment variable holding the seed for randomized test corpora.
pub const SEED_ENV: &str = "LOWDIN_SEED";

/// Seed for randomized corpora: `LOWDIN_SEED` when set and parseable,
/// otherwise `default`.
pub fn corpus_seed(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Hermitian, unit-diagonal, positive-definite overlap matrix.
///
/// Immutable once built. The eigendecomposition is computed during
/// validation; `O^{1/2}` and `O^{-1/2}` are filled in on first use.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    matrix: ComplexMatrix,
    eigen: HermitianEigen,
    sqrt: OnceLock<ComplexMatrix>,
    inv_sqrt: OnceLock<ComplexMatrix>,
}

impl PartialEq for GramMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl GramMatrix {
    /// Validates a dense overlap matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.rows();
        if !matrix.is_square() || dim < 2 {
            return Err(Error::InvalidGram(format!(
                "expected a square matrix of dimension >= 2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        for i in 0..dim {
            let d = matrix[(i, i)];
            if (d - Complex64::new(1.0, 0.0)).norm() > UNIT_TOLERANCE {
                return Err(Error::InvalidGram(format!(
                    "diagonal entry {} is {d}, expected 1",
                    i + 1
                )));
            }
        }
        let eigen = hermitian_eig(&matrix)?;
        linalg::ensure_positive_definite(&eigen)?;
        for i in 0..dim {
            for j in i + 1..dim {
                if matrix[(i, j)].norm() >= 1.0 {
                    return Err(Error::InvalidGram(format!(
                        "|O_{},{}| = {} is not below 1",
                        i + 1,
                        j + 1,
                        matrix[(i, j)].norm()
                    )));
                }
            }
        }
        Ok(Self {
            matrix,
            eigen,
            sqrt: OnceLock::new(),
            inv_sqrt: OnceLock::new(),
        })
    }

    /// Gram matrix of the columns of `vectors`.
    ///
    /// Columns must be unit-norm within [`UNIT_TOLERANCE`]; a smallest
    /// eigenvalue at or below the floor is reported as
    /// [`Error::LinearlyDependent`].
    pub fn from_vectors(vectors: &ComplexMatrix) -> Result<Self> {
        for (index, col) in vectors.columns().iter().enumerate() {
            let norm = col.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::NotNormalized { index, norm });
            }
        }
        let mut overlaps = &vectors.adjoint() * vectors;
        for i in 0..overlaps.rows() {
            overlaps[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Self::new(overlaps.hermitian_part()).map_err(|e| match e {
            Error::NotPositiveDefinite { lambda_min } => Error::LinearlyDependent { lambda_min },
            other => other,
        })
    }

    /// Assembles a Gram matrix from pairwise overlaps; unspecified pairs are 0.
    pub fn from_overlaps(spec: &OverlapSpec) -> Result<Self> {
        spec.validate()?;
        let mut m = ComplexMatrix::identity(spec.dim);
        for &(i, j, z) in &spec.pairs {
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
        Self::new(m)
    }

    /// Real Gram matrix with off-diagonal overlaps drawn uniformly from
    /// `overlap_range`, re-drawn until positive definite.
    ///
    /// Deterministic in `(dim, seed, overlap_range)`.
    pub fn random(dim: usize, seed: u64, overlap_range: (f64, f64)) -> Result<Self> {
        let (lo, hi) = overlap_range;
        if dim < 2 {
            return Err(Error::InvalidParameters(format!(
                "random Gram matrix needs dim >= 2, got {dim}"
            )));
        }
        if !(lo > -1.0 && hi < 1.0 && lo <= hi) {
            return Err(Error::InvalidParameters(format!(
                "overlap range [{lo}, {hi}] is not an interval inside (-1, 1)"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_DRAWS {
            let mut m = ComplexMatrix::identity(dim);
            for i in 0..dim {
                for j in i + 1..dim {
                    let s = Complex64::new(rng.gen_range(lo..=hi), 0.0);
                    m[(i, j)] = s;
                    m[(j, i)] = s;
                }
            }
            match Self::new(m) {
                Ok(g) => return Ok(g),
                Err(Error::NotPositiveDefinite { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::GenerationFailure { tries: MAX_DRAWS })
    }

    /// 2×2 Gram matrix with real overlap `s`.
    pub fn two_dim(s: f64) -> Result<Self> {
        Self::from_overlaps(&OverlapSpec::new(2, vec![(0, 1, Complex64::new(s, 0.0))]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `O_ij` with zero-based indices.
    pub fn overlap(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn condition_number(&self) -> f64 {
        self.eigen.max_eigenvalue() / self.eigen.min_eigenvalue()
    }

    /// `O^{1/2}`.
    pub fn sqrt(&self) -> &ComplexMatrix {
        self.sqrt
            .get_or_init(|| self.eigen.spectral_map(f64::sqrt))
    }

    /// `O^{-1/2}`.
    pub fn inv_sqrt(&self) -> &ComplexMatrix {
        self.inv_sqrt
            .get_or_init(|| self.eigen.spectral_map(|x| 1.0 / x.sqrt()))
    }

    /// `O^{1/2}` or `O^{-1/2}`.
    pub fn power(&self, power: MatrixPower) -> &ComplexMatrix {
        match power {
            MatrixPower::Sqrt => self.sqrt(),
            MatrixPower::InvSqrt => self.inv_sqrt(),
        }
    }

    /// Smallest eigenvalue of `O`; always above [`LAMBDA_FLOOR`].
    pub fn lambda_min(&self) -> f64 {
        debug_assert!(self.eigen.min_eigenvalue() > LAMBDA_FLOOR);
        self.eigen.min_eigenvalue()
    }
}

/// Compact description of a Gram matrix: dimension plus the overlaps of the
/// pairs `(i, j)`, `i < j`, zero-based. Pairs not listed have zero overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSpec {
    pub dim: usize,
    pub pairs: Vec<(usize, usize, Complex64)>,
}

impl OverlapSpec {
    pub fn new(dim: usize, pairs: Vec<(usize, usize, Complex64)>) -> Self {
        Self { dim, pairs }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidGram(format!(
                "dimension must be at least 2, got {}",
                self.dim
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for &(i, j, z) in &self.pairs {
            if i >= j || j >= self.dim {
                return Err(Error::InvalidGram(format!(
                    "pair ({}, {}) must satisfy 1 <= i < j <= {}",
                    i + 1,
                    j + 1,
                    self.dim
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGram(format!(
                    "pair ({}, {}) listed twice",
                    i + 1,
                    j + 1
                )));
            }
            if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
                return Err(Error::InvalidGram(format!(
                    "overlap {z} of pair ({}, {}) must have modulus below 1",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}
