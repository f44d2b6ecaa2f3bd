//! Orthogonalization of non-orthogonal bases and Löwdin weights.
//!
//! * [`linalg`]: complex matrices, Jacobi Hermitian eigensolver, `M^{±1/2}`.
//! * [`gram`]: validated overlap matrices with cached square roots.
//! * [`ortho`]: Gram–Schmidt, Löwdin symmetric and canonical
//!   orthogonalization, and the inverse construction `C = O^{1/2}`.
//! * [`states`]: pure states and density operators over a non-orthogonal
//!   basis, Löwdin transforms and weights.
//! * [`measures`]: Shannon entropy, participation ratio and its inverse.
//! * [`io`]: JSON schemas for Gram matrices, bases and states.

pub mod error;
pub mod gram;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod ortho;
pub mod states;

pub use error::{Error, Result};
pub use gram::{GramMatrix, OverlapSpec};
pub use linalg::{ComplexMatrix, HermitianEigen, MatrixPower};
pub use measures::MeasureReport;
pub use num_complex::Complex64;
pub use ortho::{BasisSet, Method, OrthoResult, Sign};
pub use states::{DensityOperator, LowdinTransformedState, PureState, WeightDistribution};
