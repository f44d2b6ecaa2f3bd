//! Pure states and density operators expanded over a non-orthogonal basis,
//! and their Löwdin weights.
//!
//! With `O` the overlap matrix, a pure state `|α⟩ = Σ a_k |c_k⟩` has Löwdin
//! coefficients `b = O^{1/2} a` and weights `w_k = |b_k|²`. A density
//! operator with coefficient matrix `ρ` maps to
//! `ρ_L = O^{1/2} ρ O^{1/2} / Tr(O^{1/2} ρ O^{1/2})` with weights `[ρ_L]_kk`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gram::{GramMatrix, OverlapSpec};
use crate::linalg::{hermitian_eig, hermitian_tolerance, ComplexMatrix};

/// Tolerance on `a†Oa = 1`, `Tr ρ = 1` and `Σ w_k = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Eigenvalues of `ρ` down to this value still count as non-negative.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// `Tr(Oρ)` at or below this value cannot be normalized.
pub const TRACE_FLOOR: f64 = 1e-12;

fn quadratic_form(gram: &GramMatrix, a: &[Complex64]) -> f64 {
    let oa = gram.matrix().mul_vec(a);
    a.iter().zip(&oa).map(|(x, y)| x.conj() * y).sum::<Complex64>().re
}

/// Normalized superposition `Σ a_k |c_k⟩` with `a†Oa = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    gram: GramMatrix,
    coeffs: Vec<Complex64>,
}

impl PureState {
    /// Accepts coefficients that already satisfy `a†Oa = 1`.
    pub fn new(gram: GramMatrix, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(&gram, coeffs.len())?;
        let norm = quadratic_form(&gram, &coeffs);
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::StateNotNormalized { norm });
        }
        Ok(Self { gram, coeffs })
    }

    /// Rescales `raw` to `raw / sqrt(raw†·O·raw)`.
    pub fn normalize(gram: GramMatrix, raw: &[Complex64]) -> Result<Self> {
        check_len(&gram, raw.len())?;
        if raw.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameters("non-finite coefficient".into()));
        }
        let norm = quadratic_form(&gram, raw);
        if norm.is_nan() || norm <= 0.0 || raw.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            return Err(Error::ZeroState);
        }
        let scale = 1.0 / norm.sqrt();
        let coeffs = raw.iter().map(|z| z * scale).collect();
        Ok(Self { gram, coeffs })
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `a†Oa`.
    pub fn norm_sqr(&self) -> f64 {
        quadratic_form(&self.gram, &self.coeffs)
    }

    /// Coefficient matrix `a a†` of `|α⟩⟨α|`, rescaled to unit trace.
    pub fn projector(&self) -> Result<DensityOperator> {
        let d = self.dim();
        let mut rho = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                rho[(i, j)] = self.coeffs[i] * self.coeffs[j].conj();
            }
        }
        let tr = rho.trace().re;
        if tr.is_nan() || tr <= 0.0 {
            return Err(Error::ZeroState);
        }
        DensityOperator::new(self.gram.clone(), rho.scale(Complex64::new(1.0 / tr, 0.0)))
    }
}

fn check_len(gram: &GramMatrix, len: usize) -> Result<()> {
    if len != gram.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{len} coefficients for a {}-dimensional basis",
            gram.dim()
        )));
    }
    Ok(())
}

/// Löwdin coefficients `b = O^{1/2} a`.
pub fn lowdin_coeffs(state: &PureState) -> Vec<Complex64> {
    state.gram.sqrt().mul_vec(&state.coeffs)
}

/// `w_k = |[O^{1/2} a]_k|²`.
pub fn weights_pure(state: &PureState) -> WeightDistribution {
    let weights = lowdin_coeffs(state).iter().map(Complex64::norm_sqr).collect();
    WeightDistribution { weights }
}

/// Chirgwin–Coulson weights `Re(conj(a_k) [Oa]_k)`.
///
/// They sum to one but, unlike Löwdin weights, can be negative or exceed one.
pub fn chirgwin_coulson_weights(state: &PureState) -> Vec<f64> {
    let oa = state.gram.matrix().mul_vec(&state.coeffs);
    state
        .coeffs
        .iter()
        .zip(&oa)
        .map(|(a, b)| (a.conj() * b).re)
        .collect()
}

/// `(|c_1⟩ + γ|c_2⟩) / sqrt(1 + γ² + 2γs)` over a 2D basis with real overlap `s`.
pub fn beta_state(s: f64, gamma: f64) -> Result<PureState> {
    let gram = GramMatrix::two_dim(s)?;
    PureState::normalize(gram, &[Complex64::new(1.0, 0.0), Complex64::new(gamma, 0.0)])
}

/// Gram matrix with `⟨c_1|c_2⟩ = s` and `⟨c_1|c_3⟩ = ⟨c_2|c_3⟩ = -s`.
pub fn golden_gram_3d(s: f64) -> Result<GramMatrix> {
    let z = |x: f64| Complex64::new(x, 0.0);
    GramMatrix::from_overlaps(&OverlapSpec::new(
        3,
        vec![(0, 1, z(s)), (0, 2, z(-s)), (1, 2, z(-s))],
    ))
}

/// Maximal-superposition state `(|c_1⟩ + |c_2⟩ - |c_3⟩) / sqrt(3(1 + 2s))`
/// over [`golden_gram_3d`], for `s ∈ (-1/2, 0]`.
pub fn golden_state_3d(s: f64) -> Result<PureState> {
    if !(s > -0.5 && s <= 0.0) {
        return Err(Error::InvalidParameters(format!(
            "golden state overlap {s} outside (-1/2, 0]"
        )));
    }
    let gram = golden_gram_3d(s)?;
    let scale = 1.0 / (3.0 * (1.0 + 2.0 * s)).sqrt();
    let coeffs = [1.0, 1.0, -1.0]
        .iter()
        .map(|&x| Complex64::new(x * scale, 0.0))
        .collect();
    PureState::new(gram, coeffs)
}

/// Coefficient matrix `ρ` of `Σ ρ_ij |c_i⟩⟨c_j|`: Hermitian, positive
/// semi-definite and of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    gram: GramMatrix,
    rho: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(gram: GramMatrix, rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_square() || rho.rows() != gram.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} coefficient matrix for a {}-dimensional basis",
                rho.rows(),
                rho.cols(),
                gram.dim()
            )));
        }
        let deviation = rho.hermitian_deviation();
        if deviation > hermitian_tolerance(&rho) {
            return Err(Error::InvalidDensity(format!(
                "coefficient matrix is not Hermitian (deviation {deviation:e})"
            )));
        }
        let eig = hermitian_eig(&rho)?;
        if eig.min_eigenvalue() < -PSD_TOLERANCE {
            return Err(Error::InvalidDensity(format!(
                "coefficient matrix has negative eigenvalue {:e}",
                eig.min_eigenvalue()
            )));
        }
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        let overlap_trace = (gram.matrix() * &rho).trace().re;
        if overlap_trace <= TRACE_FLOOR {
            return Err(Error::DegenerateTrace {
                trace: overlap_trace,
            });
        }
        Ok(Self {
            gram,
            rho: rho.hermitian_part(),
        })
    }

    /// Real 2D operator `[[p, q], [q, 1-p]]` over overlap `s`.
    pub fn two_dim(p: f64, q: f64, s: f64) -> Result<Self> {
        let rho = ComplexMatrix::from_real(2, 2, &[p, q, q, 1.0 - p])?;
        Self::new(GramMatrix::two_dim(s)?, rho)
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    /// Superposition-free part: the diagonal of `ρ`.
    pub fn diagonal_part(&self) -> Result<Self> {
        let diag: Vec<Complex64> = self.rho.diagonal().iter().map(|z| Complex64::new(z.re, 0.0)).collect();
        let tr: f64 = diag.iter().map(|z| z.re).sum();
        let scaled: Vec<Complex64> = diag.iter().map(|z| z / tr).collect();
        Self::new(self.gram.clone(), ComplexMatrix::from_diagonal(&scaled))
    }
}

/// `ρ_L`: Hermitian, positive semi-definite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct LowdinTransformedState {
    pub matrix: ComplexMatrix,
}

impl LowdinTransformedState {
    pub fn weights(&self) -> WeightDistribution {
        WeightDistribution {
            weights: self.matrix.diagonal().iter().map(|z| z.re.max(0.0)).collect(),
        }
    }

    /// `ρ_L` with its diagonal zeroed.
    pub fn off_diagonal(&self) -> ComplexMatrix {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            m[(i, i)] = Complex64::new(0.0, 0.0);
        }
        m
    }
}

/// `ρ_L = O^{1/2} ρ O^{1/2} / Tr(O^{1/2} ρ O^{1/2})`.
pub fn lowdin_density(op: &DensityOperator) -> Result<LowdinTransformedState> {
    let root = op.gram.sqrt();
    let unnormalized = &(root * &op.rho) * root;
    let tr = unnormalized.trace().re;
    if tr <= TRACE_FLOOR {
        return Err(Error::DegenerateTrace { trace: tr });
    }
    Ok(LowdinTransformedState {
        matrix: unnormalized.scale(Complex64::new(1.0 / tr, 0.0)).hermitian_part(),
    })
}

/// `w_k = [ρ_L]_kk`.
pub fn weights_density(op: &DensityOperator) -> Result<WeightDistribution> {
    Ok(lowdin_density(op)?.weights())
}

/// Closed-form Löwdin weights of `[[p, q], [q, 1-p]]` over overlap `s`:
/// `w_1 = [1 + (2p-1)·sqrt(1-s²) + 2qs] / (2 + 4qs)`.
pub fn closed_form_2d_weights(p: f64, q: f64, s: f64) -> Result<WeightDistribution> {
    if !(0.0..=1.0).contains(&p) || !q.is_finite() || !(s > -1.0 && s < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "need p in [0, 1], finite q and s in (-1, 1); got p = {p}, q = {q}, s = {s}"
        )));
    }
    if q * q > p * (1.0 - p) + PSD_TOLERANCE {
        return Err(Error::InvalidParameters(format!(
            "rho = [[{p}, {q}], [{q}, {}]] is not positive semi-definite",
            1.0 - p
        )));
    }
    let denom = 2.0 + 4.0 * q * s;
    if denom <= 2.0 * TRACE_FLOOR {
        return Err(Error::InvalidParameters(format!(
            "2 + 4qs = {denom} is not positive"
        )));
    }
    let w1 = (1.0 + (2.0 * p - 1.0) * (1.0 - s * s).sqrt() + 2.0 * q * s) / denom;
    Ok(WeightDistribution {
        weights: vec![w1, 1.0 - w1],
    })
}

/// Off-diagonal content of `ρ_L` split into the part produced by the
/// diagonal of `ρ` alone (basis-overlap artifact) and the remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct OffDiagonalDecomposition {
    pub artifact: ComplexMatrix,
    pub genuine: ComplexMatrix,
}

pub fn offdiagonal_decomposition(op: &DensityOperator) -> Result<OffDiagonalDecomposition> {
    let full = lowdin_density(op)?.off_diagonal();
    let artifact = lowdin_density(&op.diagonal_part()?)?.off_diagonal();
    let genuine = &full - &artifact;
    Ok(OffDiagonalDecomposition { artifact, genuine })
}

/// Probability vector over the Löwdin basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightDistribution {
    weights: Vec<f64>,
}

impl WeightDistribution {
    /// Validates non-negativity and unit sum.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty distribution".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} is negative or not finite")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(Self { weights })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}
