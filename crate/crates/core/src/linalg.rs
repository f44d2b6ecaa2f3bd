//! Dense complex matrices and the Hermitian eigensolver behind every matrix
//! function in the crate.
//!
//! The eigensolver is a cyclic complex Jacobi method. Each rotation zeroes
//! one off-diagonal pair `(p, q)` with a unitary of the form
//!
//! ```text
//! G = [[ c,            s·e^{iφ} ],
//!      [ -s·e^{-iφ},   c        ]]     φ = arg(m_pq)
//! ```
//!
//! and the accumulated product of rotations gives the eigenvectors.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues at or below this value make a matrix "not positive definite".
pub const LAMBDA_FLOOR: f64 = 1e-12;

/// Sweep budget of the Jacobi solver is `SWEEP_FACTOR * d^2`.
const SWEEP_FACTOR: usize = 30;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix shape {rows}x{cols} is empty"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a matrix whose k-th column is `columns[k]`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(
                "columns have different lengths".into(),
            ));
        }
        let mut data = vec![ZERO; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                data[i * cols + j] = z;
            }
        }
        Self::from_vec(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Reorders columns so that column `k` of the result is column `perm[k]`
    /// of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (k, &src) in perm.iter().enumerate() {
                out[(i, k)] = self[(i, src)];
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_ij |m_ij - conj(m_ji)|`; infinite for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Hermitian part `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        let mut out = self + &adj;
        out.data.iter_mut().for_each(|z| *z *= 0.5);
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Frobenius norm `sqrt(Σ |m_ij|²)`.
pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.frobenius_norm()
}

/// Hermiticity tolerance used when validating floating-point input.
pub fn hermitian_tolerance(m: &ComplexMatrix) -> f64 {
    1e-10 * m.frobenius_norm().max(1.0)
}

/// `m = U · diag(λ) · U†` with `λ` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `U · diag(f(λ)) · U†`, returned exactly Hermitian.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let u = &self.eigenvectors;
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            for i in 0..n {
                let uik = u[(i, k)] * fl;
                for j in 0..n {
                    out[(i, j)] += uik * u[(j, k)].conj();
                }
            }
        }
        out.hermitian_part()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let tolerance = hermitian_tolerance(m);
    let deviation = m.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = f64::EPSILON * scale;
    let max_sweeps = SWEEP_FACTOR * n * n;

    let mut converged = false;
    for sweep in 0..max_sweeps {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Negligible against both diagonal entries: drop it.
                if sweep > 3 && app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs() {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                rotate(&mut a, &mut v, p, q, app, aqq, apq);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::ConvergenceFailure { sweeps: max_sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Ok(HermitianEigen {
        eigenvalues: order.iter().map(|&i| a[(i, i)].re).collect(),
        eigenvectors: v.permute_columns(&order),
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    app: f64,
    aqq: f64,
    apq: Complex64,
) {
    let n = a.rows();
    let g = apq.norm();
    let phase = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let g_pq = phase * s;
    let g_qp = -phase.conj() * s;

    // A <- A G, V <- V G
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * c;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * c;
    }
    // A <- G† A
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c + aqk * g_qp.conj();
        a[(q, k)] = apk * g_pq.conj() + aqk * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
}

/// The two matrix powers the orthogonalization machinery needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixPower {
    /// `M^{1/2}`
    Sqrt,
    /// `M^{-1/2}`
    InvSqrt,
}

impl MatrixPower {
    pub fn exponent(self) -> f64 {
        match self {
            MatrixPower::Sqrt => 0.5,
            MatrixPower::InvSqrt => -0.5,
        }
    }

    fn apply(self, lambda: f64) -> f64 {
        match self {
            MatrixPower::Sqrt => lambda.sqrt(),
            MatrixPower::InvSqrt => 1.0 / lambda.sqrt(),
        }
    }
}

/// Principal power of a Hermitian positive-definite matrix.
pub fn matrix_function(m: &ComplexMatrix, power: MatrixPower) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    matrix_function_from_eig(&eig, power)
}

pub fn matrix_function_from_eig(eig: &HermitianEigen, power: MatrixPower) -> Result<ComplexMatrix> {
    ensure_positive_definite(eig)?;
    Ok(eig.spectral_map(|x| power.apply(x)))
}

pub(crate) fn ensure_positive_definite(eig: &HermitianEigen) -> Result<()> {
    let lambda_min = eig.min_eigenvalue();
    if lambda_min <= LAMBDA_FLOOR {
        return Err(Error::NotPositiveDefinite { lambda_min });
    }
    Ok(())
}

/// `λ_max / λ_min` of a Hermitian positive-definite matrix.
pub fn condition_number(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(m)?;
    ensure_positive_definite(&eig)?;
    Ok(eig.max_eigenvalue() / eig.min_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn overlap2(s: f64) -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, s, s, 1.0]).unwrap()
    }

    fn residual(m: &ComplexMatrix, eig: &HermitianEigen) -> f64 {
        (&eig.reconstruct() - m).frobenius_norm()
    }

    #[test]
    fn eig_of_two_by_two_overlap() {
        let eig = hermitian_eig(&overlap2(0.5)).unwrap();
        assert!((eig.eigenvalues[0] - 0.5).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.5).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let u = &eig.eigenvectors;
        // (1, -1)/√2 for λ = 0.5 and (1, 1)/√2 for λ = 1.5, up to phase
        assert!(((u[(0, 0)] * u[(1, 0)].conj()).re + 0.5).abs() < 1e-14);
        assert!(((u[(0, 1)] * u[(1, 1)].conj()).re - 0.5).abs() < 1e-14);
        assert!((u[(0, 0)].norm() - r).abs() < 1e-14);
    }

    #[test]
    fn eig_of_identity() {
        let m = ComplexMatrix::identity(3);
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert!(residual(&m, &eig) == 0.0);
    }

    #[test]
    fn eig_of_complex_two_by_two() {
        // λ² - 4λ + 3 = 0 for [[2, i], [-i, 2]]
        let m = ComplexMatrix::from_vec(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)])
            .unwrap();
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(residual(&m, &eig) < 10.0 * 2.0 * f64::EPSILON * m.frobenius_norm());
    }

    #[test]
    fn closed_form_overlap_eigenvalues() {
        for s in [0.0, 0.1, 0.4, 0.5, 0.9, -0.1, -0.4, -0.5, -0.9] {
            let eig = hermitian_eig(&overlap2(s)).unwrap();
            let a: f64 = s;
            assert!((eig.eigenvalues[0] - (1.0 - a.abs())).abs() < 1e-15, "s = {s}");
            assert!((eig.eigenvalues[1] - (1.0 + a.abs())).abs() < 1e-15, "s = {s}");
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.4, 1.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&rect), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::from_real(2, 2, &[1.0, f64::NAN, 0.0, 1.0]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
    }

    #[test]
    fn sqrt_of_half_overlap() {
        let root = matrix_function(&overlap2(0.5), MatrixPower::Sqrt).unwrap();
        assert!((root[(0, 0)].re - 0.966).abs() < 1e-3);
        assert!((root[(0, 1)].re - 0.259).abs() < 1e-3);
        assert!((root[(1, 0)].re - 0.259).abs() < 1e-3);
        assert!((root[(1, 1)].re - 0.966).abs() < 1e-3);
    }

    #[test]
    fn inv_sqrt_of_half_overlap() {
        // ½(1/√1.5 ± 1/√0.5) = 1.115355.../-0.298858...
        let inv = matrix_function(&overlap2(0.5), MatrixPower::InvSqrt).unwrap();
        assert!((inv[(0, 0)].re - 1.1154).abs() < 1e-3);
        assert!((inv[(0, 1)].re + 0.2989).abs() < 1e-3);
        let root = matrix_function(&overlap2(0.5), MatrixPower::Sqrt).unwrap();
        let prod = &inv * &root;
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn powers_of_identity_are_identity() {
        let id = ComplexMatrix::identity(4);
        for p in [MatrixPower::Sqrt, MatrixPower::InvSqrt] {
            assert_eq!(matrix_function(&id, p).unwrap(), id);
        }
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_norm(&ComplexMatrix::zeros(2, 2)), 0.0);
        assert!((frobenius_norm(&ComplexMatrix::identity(3)) - 3f64.sqrt()).abs() < 1e-15);
        let m = ComplexMatrix::from_real(2, 2, &[3.0, 4.0, 0.0, 0.0]).unwrap();
        assert_eq!(frobenius_norm(&m), 5.0);
    }

    #[test]
    fn condition_number_examples() {
        assert_eq!(condition_number(&ComplexMatrix::identity(3)).unwrap(), 1.0);
        assert!((condition_number(&overlap2(0.5)).unwrap() - 3.0).abs() < 1e-12);
        assert!((condition_number(&overlap2(0.9)).unwrap() - 19.0).abs() < 1e-10);
        let singular = overlap2(1.0);
        assert!(matches!(
            condition_number(&singular),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn matrix_function_rejects_indefinite() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(matches!(
            matrix_function(&m, MatrixPower::Sqrt),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn from_columns_places_columns() {
        let m = ComplexMatrix::from_columns(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 1.0)]])
            .unwrap();
        assert_eq!(m[(0, 1)], c(3.0, 0.0));
        assert_eq!(m[(1, 1)], c(4.0, 1.0));
        assert_eq!(m.column(0), vec![c(1.0, 0.0), c(2.0, 0.0)]);
    }
}
