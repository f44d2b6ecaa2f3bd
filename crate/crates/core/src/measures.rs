//! Delocalization measures of a weight distribution.

use serde::{Deserialize, Serialize};

use crate::states::WeightDistribution;

/// Weights below this are treated as exactly zero before taking logarithms.
pub const ZERO_WEIGHT: f64 = 1e-15;

/// `H = -Σ w_k log₂ w_k` in bits, with `0 · log 0 = 0`.
pub fn shannon_entropy(w: &WeightDistribution) -> f64 {
    let h: f64 = w
        .as_slice()
        .iter()
        .filter(|&&x| x >= ZERO_WEIGHT)
        .map(|&x| -x * x.log2())
        .sum();
    h.max(0.0)
}

/// `IPR = Σ w_k²`.
pub fn inverse_participation_ratio(w: &WeightDistribution) -> f64 {
    w.as_slice().iter().map(|x| x * x).sum()
}

/// `PR = 1 / Σ w_k²`, the effective number of occupied basis states.
pub fn participation_ratio(w: &WeightDistribution) -> f64 {
    1.0 / inverse_participation_ratio(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub entropy: f64,
    pub participation_ratio: f64,
    pub inverse_participation_ratio: f64,
}

impl MeasureReport {
    pub fn of(w: &WeightDistribution) -> Self {
        Self {
            entropy: shannon_entropy(w),
            participation_ratio: participation_ratio(w),
            inverse_participation_ratio: inverse_participation_ratio(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> WeightDistribution {
        WeightDistribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_worked_values() {
        assert!((shannon_entropy(&w(&[0.66, 0.34])) - 0.925).abs() < 2e-3);
        assert!((shannon_entropy(&w(&[0.715, 0.285])) - 0.862).abs() < 2e-3);
        assert_eq!(shannon_entropy(&w(&[0.5, 0.5])), 1.0);
    }

    #[test]
    fn entropy_extremes() {
        assert_eq!(shannon_entropy(&w(&[1.0, 0.0, 0.0])), 0.0);
        let u = w(&[0.25; 4]);
        assert!((shannon_entropy(&u) - 2.0).abs() < 1e-15);
        // sub-threshold weights contribute nothing
        let tiny = w(&[1.0 - 1e-16, 1e-16]);
        assert!(shannon_entropy(&tiny) < 1e-15);
    }

    #[test]
    fn participation_examples() {
        assert!((participation_ratio(&w(&[1.0 / 3.0; 3])) - 3.0).abs() < 1e-12);
        assert_eq!(participation_ratio(&w(&[1.0, 0.0])), 1.0);
        assert!((participation_ratio(&w(&[0.66, 0.34])) - 1.0 / 0.5512).abs() < 1e-12);
        assert!((participation_ratio(&w(&[0.66, 0.34])) - 1.8143).abs() < 1e-3);
    }

    #[test]
    fn inverse_participation_examples() {
        assert!((inverse_participation_ratio(&w(&[0.2; 5])) - 0.2).abs() < 1e-15);
        assert_eq!(inverse_participation_ratio(&w(&[1.0, 0.0, 0.0])), 1.0);
        assert!((inverse_participation_ratio(&w(&[0.715, 0.285])) - 0.5925).abs() < 1e-3);
    }

    #[test]
    fn report_reciprocity() {
        let r = MeasureReport::of(&w(&[0.1, 0.2, 0.3, 0.4]));
        assert!((r.participation_ratio * r.inverse_participation_ratio - 1.0).abs() < 1e-12);
        assert!(r.entropy <= 2.0);
    }
}
