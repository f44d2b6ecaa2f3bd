use lowdin_core::io::{BasisFile, Pair, StateFile};
use lowdin_core::measures::MeasureReport;
use lowdin_core::states::{self, DensityOperator, PureState};
use lowdin_core::{Complex64, ComplexMatrix, OrthoResult, WeightDistribution};
use serde::{Deserialize, Serialize};

use crate::format::round_sig;

/// Everything a command computed, with every derived number rounded to 12
/// significant digits. The input file is echoed verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub command: String,
    pub input: InputEcho,
    /// Command-line spelling of the method.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// 1-based processing order (Gram–Schmidt only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    /// Orthonormal output vectors, one list of `[re, im]` per vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Pair>>>,
    /// Rows of `T` with `E = C · T`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distortion: Option<Distortion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lowdin_coeffs: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_l: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chirgwin_coulson: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measures: Option<MeasureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offdiagonal: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputEcho {
    Basis(BasisFile),
    State(StateFile),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Distortion {
    /// `sqrt(Σ_k ‖e_k − c_k‖²)`, each output paired with its source vector.
    pub frobenius: f64,
    /// `max |E†E − I|`.
    pub orthonormality_error: f64,
    /// `λ_max / λ_min` of the input Gram matrix.
    pub condition_number: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub artifact: Vec<Vec<Pair>>,
    pub genuine: Vec<Vec<Pair>>,
}

fn pair(z: Complex64) -> Pair {
    [round_sig(z.re), round_sig(z.im)]
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| m.row(i).into_iter().map(pair).collect()).collect()
}

fn columns(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    m.columns().into_iter().map(|c| c.into_iter().map(pair).collect()).collect()
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(round_sig).collect()
}

fn rounded_measures(w: &WeightDistribution) -> MeasureReport {
    let m = MeasureReport::of(w);
    MeasureReport {
        entropy: round_sig(m.entropy),
        participation_ratio: round_sig(m.participation_ratio),
        inverse_participation_ratio: round_sig(m.inverse_participation_ratio),
    }
}

impl AnalysisReport {
    fn empty(command: &str, input: InputEcho) -> Self {
        Self {
            command: command.into(),
            input,
            method: None,
            order: None,
            basis: None,
            transform: None,
            distortion: None,
            lowdin_coeffs: None,
            rho_l: None,
            weights: None,
            chirgwin_coulson: None,
            measures: None,
            offdiagonal: None,
        }
    }

    pub fn orthogonalization(
        input: BasisFile,
        result: &OrthoResult,
        order: Option<&[usize]>,
        condition_number: f64,
    ) -> Self {
        let e = result.basis.vectors();
        let orthonormality_error = (&e.adjoint() * e).max_abs_diff(&ComplexMatrix::identity(e.cols()));
        Self {
            method: Some(result.method.name().into()),
            order: order.map(|o| o.iter().map(|k| k + 1).collect()),
            basis: Some(columns(e)),
            transform: Some(rows(&result.transform)),
            distortion: Some(Distortion {
                frobenius: round_sig(result.distortion),
                orthonormality_error: round_sig(orthonormality_error),
                condition_number: round_sig(condition_number),
            }),
            ..Self::empty("orthogonalize", InputEcho::Basis(input))
        }
    }

    pub fn pure_weights(input: StateFile, state: &PureState) -> Self {
        let w = states::weights_pure(state);
        Self {
            lowdin_coeffs: Some(states::lowdin_coeffs(state).into_iter().map(pair).collect()),
            weights: Some(rounded(w.as_slice())),
            chirgwin_coulson: Some(rounded(&states::chirgwin_coulson_weights(state))),
            measures: Some(rounded_measures(&w)),
            ..Self::empty("weights", InputEcho::State(input))
        }
    }

    pub fn density_weights(input: StateFile, op: &DensityOperator) -> lowdin_core::Result<Self> {
        let rho_l = states::lowdin_density(op)?;
        let w = rho_l.weights();
        let split = states::offdiagonal_decomposition(op)?;
        Ok(Self {
            rho_l: Some(rows(&rho_l.matrix)),
            weights: Some(rounded(w.as_slice())),
            measures: Some(rounded_measures(&w)),
            offdiagonal: Some(Decomposition {
                artifact: rows(&split.artifact),
                genuine: rows(&split.genuine),
            }),
            ..Self::empty("weights", InputEcho::State(input))
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
