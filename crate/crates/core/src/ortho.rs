//! Gram–Schmidt, Löwdin symmetric and Löwdin canonical orthogonalization.
//!
//! Basis vectors are matrix columns, and every method returns the
//! transformation `T` with `E = C · T`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::{GramMatrix, UNIT_TOLERANCE};
use crate::linalg::ComplexMatrix;
use crate::states::PureState;

/// Gram–Schmidt steps whose residual norm falls to this value are rejected.
pub const DEGENERATE_STEP_NORM: f64 = 1e-10;

/// Set of unit-norm, linearly independent vectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    vectors: ComplexMatrix,
}

impl BasisSet {
    pub fn new(vectors: ComplexMatrix) -> Result<Self> {
        if vectors.cols() > vectors.rows() {
            return Err(Error::LinearlyDependent { lambda_min: 0.0 });
        }
        GramMatrix::from_vectors(&vectors)?;
        Ok(Self { vectors })
    }

    /// Computational basis `{|1⟩, …, |d⟩}`.
    pub fn computational(dim: usize) -> Self {
        Self {
            vectors: ComplexMatrix::identity(dim),
        }
    }

    /// Output of an orthogonalization; orthonormal up to rounding.
    fn orthonormal(vectors: ComplexMatrix) -> Self {
        Self { vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn num_vectors(&self) -> usize {
        self.vectors.cols()
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    pub fn gram(&self) -> Result<GramMatrix> {
        GramMatrix::from_vectors(&self.vectors)
    }

    /// Raw Gram matrix `C†C` without validation.
    pub fn overlap_matrix(&self) -> ComplexMatrix {
        &self.vectors.adjoint() * &self.vectors
    }

    /// Columns reordered so that column `k` is `self.vector(perm[k])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        validate_order(perm, self.num_vectors())?;
        Ok(Self {
            vectors: self.vectors.permute_columns(perm),
        })
    }
}

/// Random complex basis of `count` vectors in `ambient_dim` dimensions with
/// entries uniform in the unit square, re-drawn until the Gram matrix has
/// condition number at most `max_condition`.
pub fn random_basis(ambient_dim: usize, count: usize, seed: u64, max_condition: f64) -> Result<BasisSet> {
    if count < 2 || count > ambient_dim {
        return Err(Error::InvalidParameters(format!(
            "cannot draw {count} independent vectors in dimension {ambient_dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..crate::gram::MAX_DRAWS {
        let columns: Vec<Vec<Complex64>> = (0..count)
            .map(|_| {
                let v: Vec<Complex64> = (0..ambient_dim)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
                v.into_iter().map(|z| z / norm).collect()
            })
            .collect();
        let vectors = ComplexMatrix::from_columns(&columns)?;
        match GramMatrix::from_vectors(&vectors) {
            Ok(g) if g.condition_number() <= max_condition => return Ok(BasisSet { vectors }),
            Ok(_) | Err(Error::LinearlyDependent { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailure {
        tries: crate::gram::MAX_DRAWS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GramSchmidt,
    LowdinSymmetric,
    LowdinCanonical,
}

impl Method {
    /// Command-line spelling.
    pub fn name(self) -> &'static str {
        match self {
            Method::GramSchmidt => "gram-schmidt",
            Method::LowdinSymmetric => "lowdin-sym",
            Method::LowdinCanonical => "lowdin-can",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gram-schmidt" => Ok(Method::GramSchmidt),
            "lowdin-sym" => Ok(Method::LowdinSymmetric),
            "lowdin-can" => Ok(Method::LowdinCanonical),
            other => Err(Error::InvalidParameters(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoResult {
    pub basis: BasisSet,
    /// `E = C · transform`.
    pub transform: ComplexMatrix,
    pub method: Method,
    /// Frobenius distance between each output vector and the input vector
    /// it was built from.
    pub distortion: f64,
}

fn validate_order(order: &[usize], d: usize) -> Result<()> {
    if order.len() != d {
        return Err(Error::InvalidPermutation(format!(
            "ordering has {} entries for {d} vectors",
            order.len()
        )));
    }
    let mut seen = vec![false; d];
    for &k in order {
        if k >= d || seen[k] {
            return Err(Error::InvalidPermutation(format!(
                "{order:?} is not a permutation of 0..{d}"
            )));
        }
        seen[k] = true;
    }
    Ok(())
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Classical Gram–Schmidt.
///
/// Vectors are processed in `order` (zero-based); output column `j` is built
/// from input vector `order[j]` by subtracting its projections onto output
/// columns `0..j` and normalizing.
pub fn gram_schmidt(input: &BasisSet, order: &[usize]) -> Result<OrthoResult> {
    let d = input.num_vectors();
    validate_order(order, d)?;
    let c = input.vectors();
    let mut outputs: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut coefficients: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for (step, &k) in order.iter().enumerate() {
        let ck = c.column(k);
        let mut v = ck.clone();
        let mut t = vec![Complex64::new(0.0, 0.0); d];
        t[k] = Complex64::new(1.0, 0.0);
        for (e, te) in outputs.iter().zip(&coefficients) {
            let proj = inner(e, &ck);
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= proj * ei;
            }
            for (ti, tei) in t.iter_mut().zip(te) {
                *ti -= proj * tei;
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm <= DEGENERATE_STEP_NORM {
            return Err(Error::DegenerateStep { step, norm });
        }
        outputs.push(v.into_iter().map(|z| z / norm).collect());
        coefficients.push(t.into_iter().map(|z| z / norm).collect());
    }
    let basis = BasisSet::orthonormal(ComplexMatrix::from_columns(&outputs)?);
    let transform = ComplexMatrix::from_columns(&coefficients)?;
    let distortion = distortion(&input.permuted(order)?, &basis)?;
    Ok(OrthoResult {
        basis,
        transform,
        method: Method::GramSchmidt,
        distortion,
    })
}

/// Löwdin symmetric orthogonalization, `E = C · O^{-1/2}`.
pub fn lowdin_symmetric(input: &BasisSet) -> Result<OrthoResult> {
    let gram = input.gram()?;
    let transform = gram.inv_sqrt().clone();
    let basis = BasisSet::orthonormal(input.vectors() * &transform);
    let distortion = distortion(input, &basis)?;
    Ok(OrthoResult {
        basis,
        transform,
        method: Method::LowdinSymmetric,
        distortion,
    })
}

/// Löwdin canonical orthogonalization, `E = C · U · D^{-1/2}` with
/// `O = U D U†`. Output column `k` belongs to the k-th smallest eigenvalue.
pub fn lowdin_canonical(input: &BasisSet) -> Result<OrthoResult> {
    let gram = input.gram()?;
    let eig = gram.eigen();
    let scale: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::new(1.0 / l.sqrt(), 0.0))
        .collect();
    let transform = &eig.eigenvectors * &ComplexMatrix::from_diagonal(&scale);
    let basis = BasisSet::orthonormal(input.vectors() * &transform);
    let distortion = distortion(input, &basis)?;
    Ok(OrthoResult {
        basis,
        transform,
        method: Method::LowdinCanonical,
        distortion,
    })
}

/// Runs `method`; `order` only affects Gram–Schmidt and defaults to `0..d`.
pub fn orthogonalize(input: &BasisSet, method: Method, order: Option<&[usize]>) -> Result<OrthoResult> {
    match method {
        Method::GramSchmidt => {
            let identity: Vec<usize> = (0..input.num_vectors()).collect();
            gram_schmidt(input, order.unwrap_or(&identity))
        }
        Method::LowdinSymmetric => lowdin_symmetric(input),
        Method::LowdinCanonical => lowdin_canonical(input),
    }
}

/// Non-orthogonal basis `C = O^{1/2}` whose Löwdin symmetric
/// orthogonalization is the computational basis.
pub fn induce_nonorthogonal(gram: &GramMatrix) -> BasisSet {
    let mut vectors = gram.sqrt().clone();
    // Columns of O^{1/2} have norm sqrt(O_kk) = 1 up to rounding.
    for j in 0..vectors.cols() {
        let norm = vectors.column(j).iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        debug_assert!((norm - 1.0).abs() < UNIT_TOLERANCE);
        for i in 0..vectors.rows() {
            vectors[(i, j)] /= norm;
        }
    }
    BasisSet { vectors }
}

/// `sqrt(Σ_k ‖a_k − b_k‖²)`, pairing columns by index.
pub fn distortion(a: &BasisSet, b: &BasisSet) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() || a.num_vectors() != b.num_vectors() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare {}x{} and {}x{} bases",
            a.ambient_dim(),
            a.num_vectors(),
            b.ambient_dim(),
            b.num_vectors()
        )));
    }
    Ok((a.vectors() - b.vectors()).frobenius_norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Representation over a 2D non-orthogonal basis of the maximally coherent
/// state `(|1⟩ ± |2⟩)/√2` of its Löwdin basis: `O^{-1/2} (1, ±1)/√2`.
///
/// For real overlap `s` this is `(1, 1)/sqrt(2(1+s))` or
/// `(1, -1)/sqrt(2(1-s))`.
pub fn maximally_coherent_image(gram: &GramMatrix, sign: Sign) -> Result<PureState> {
    if gram.dim() != 2 {
        return Err(Error::UnsupportedDimension(gram.dim()));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let target = match sign {
        Sign::Plus => [Complex64::new(r, 0.0), Complex64::new(r, 0.0)],
        Sign::Minus => [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
    };
    let coeffs = gram.inv_sqrt().mul_vec(&target);
    PureState::normalize(gram.clone(), &coeffs)
}
