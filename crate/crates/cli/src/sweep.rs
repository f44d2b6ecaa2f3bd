//! One-parameter sweeps over the two-dimensional state families.
//!
//! ```text
//! { "parameter": "s", "range": [0.1, 0.4], "steps": 2, "fixed": { "gamma": 0.6 } }
//! { "parameter": "p", "range": [0, 1], "steps": 11, "fixed": { "q": 0, "s": 0 }, "output": "p.csv" }
//! ```
//!
//! `pure` is the state `(|c_1⟩ + γ|c_2⟩)` normalized, with parameters `s` and
//! `gamma`. `mixed` is `ρ = [[p, q], [q, 1 − p]]` with parameters `p`, `q`
//! and `s`. The family is inferred from the parameter names when omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use lowdin_core::measures::MeasureReport;
use lowdin_core::states::{beta_state, weights_density, weights_pure};
use lowdin_core::DensityOperator;
use serde::{Deserialize, Serialize};

use crate::commands::{read_json, write_text};
use crate::error::{CliError, CliResult};
use crate::format::fmt_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pure,
    Mixed,
}

impl Family {
    fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::Pure => &["s", "gamma"],
            Family::Mixed => &["p", "q", "s"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: String,
    pub range: [f64; 2],
    pub steps: usize,
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

struct Plan {
    family: Family,
    swept: &'static str,
    fixed: BTreeMap<&'static str, f64>,
    values: Vec<f64>,
}

fn spec_error(msg: impl Into<String>) -> CliError {
    CliError::input("InvalidSweep", msg)
}

fn canonical_name(name: &str) -> &str {
    match name {
        "γ" => "gamma",
        other => other,
    }
}

fn check_domain(name: &str, v: f64) -> CliResult<()> {
    let ok = v.is_finite()
        && match name {
            "s" => v > -1.0 && v < 1.0,
            "p" => (0.0..=1.0).contains(&v),
            "q" => v.abs() <= 0.5,
            _ => true,
        };
    if ok {
        Ok(())
    } else {
        Err(spec_error(format!("{name} = {v} is outside its domain")))
    }
}

impl SweepSpec {
    pub fn family(&self) -> CliResult<Family> {
        if let Some(f) = self.family {
            return Ok(f);
        }
        let mut names = self.fixed.keys().map(|k| canonical_name(k)).chain([canonical_name(&self.parameter)]);
        let pure = names.clone().any(|n| n == "gamma");
        let mixed = names.any(|n| n == "p" || n == "q");
        match (pure, mixed) {
            (true, false) => Ok(Family::Pure),
            (false, true) => Ok(Family::Mixed),
            _ => Err(spec_error("cannot infer the state family; set \"family\" to \"pure\" or \"mixed\"")),
        }
    }

    /// The swept parameter values, endpoints included.
    pub fn values(&self) -> CliResult<Vec<f64>> {
        let [lo, hi] = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(spec_error(format!("range [{lo}, {hi}] must satisfy lo < hi")));
        }
        if self.steps < 2 {
            return Err(spec_error(format!("steps = {} must be at least 2", self.steps)));
        }
        let n = self.steps - 1;
        Ok((0..=n)
            .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
            .collect())
    }

    fn validate(&self) -> CliResult<Plan> {
        let family = self.family()?;
        let names = family.parameters();
        let swept = canonical_name(&self.parameter);
        let Some(&swept) = names.iter().find(|&&n| n == swept) else {
            return Err(spec_error(format!("{:?} is not a parameter of the {family:?} family", self.parameter)));
        };
        let mut fixed = BTreeMap::new();
        for (k, &v) in &self.fixed {
            let name = canonical_name(k);
            let Some(&name) = names.iter().find(|&&n| n == name) else {
                return Err(spec_error(format!("{k:?} is not a parameter of the {family:?} family")));
            };
            if name == swept {
                return Err(spec_error(format!("{k:?} is both swept and fixed")));
            }
            check_domain(name, v)?;
            fixed.insert(name, v);
        }
        if let Some(missing) = names.iter().find(|&&n| n != swept && !fixed.contains_key(n)) {
            return Err(spec_error(format!("missing fixed value for {missing:?}")));
        }
        check_domain(swept, self.range[0])?;
        check_domain(swept, self.range[1])?;
        Ok(Plan {
            family,
            swept,
            fixed,
            values: self.values()?,
        })
    }

    /// The CSV document, header `param,w_1,...,w_d,entropy,pr,ipr`.
    pub fn run(&self) -> CliResult<String> {
        let Plan {
            family,
            swept,
            fixed: mut params,
            values,
        } = self.validate()?;
        let mut csv = String::from("param,w_1,w_2,entropy,pr,ipr\n");
        for x in values {
            params.insert(swept, x);
            let w = match family {
                Family::Pure => weights_pure(&beta_state(params["s"], params["gamma"])?),
                Family::Mixed => weights_density(&DensityOperator::two_dim(params["p"], params["q"], params["s"])?)?,
            };
            let m = MeasureReport::of(&w);
            let mut row = vec![fmt_sig(x)];
            row.extend(w.as_slice().iter().map(|&v| fmt_sig(v)));
            row.extend([m.entropy, m.participation_ratio, m.inverse_participation_ratio].map(fmt_sig));
            writeln!(csv, "{}", row.join(",")).expect("writing to a string");
        }
        Ok(csv)
    }
}

/// Runs the sweep file at `spec_path` and writes the CSV to `out`, falling
/// back to its own `output` field.
pub fn cmd_sweep(spec_path: &Path, out: Option<&Path>) -> CliResult<()> {
    let spec: SweepSpec = read_json(spec_path)?;
    let target = out
        .map(Path::to_path_buf)
        .or_else(|| spec.output.clone())
        .ok_or_else(|| spec_error("no output path; pass --out or set \"output\""))?;
    let csv = spec.run()?;
    write_text(&target, &csv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> SweepSpec {
        serde_json::from_str(json).unwrap()
    }

    fn rows(csv: &str) -> Vec<Vec<f64>> {
        csv.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
    }

    #[test]
    fn gamma_family_reproduces_two_points() {
        let csv = spec(r#"{"parameter": "s", "range": [0.1, 0.4], "steps": 2, "fixed": {"gamma": 0.6}}"#)
            .run()
            .unwrap();
        assert!(csv.starts_with("param,w_1,w_2,entropy,pr,ipr\n"));
        let r = rows(&csv);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0][0], 0.1);
        assert!((r[0][1] - 0.715).abs() < 1e-2 && (r[0][3] - 0.862).abs() < 2e-3);
        assert_eq!(r[1][0], 0.4);
        assert!((r[1][1] - 0.66).abs() < 1e-2 && (r[1][3] - 0.925).abs() < 2e-3);
    }

    #[test]
    fn coherence_free_p_sweep() {
        let csv = spec(r#"{"parameter": "p", "range": [0, 1], "steps": 11, "fixed": {"q": 0, "s": 0}}"#)
            .run()
            .unwrap();
        let r = rows(&csv);
        assert_eq!(r.len(), 11);
        for row in r {
            assert!((row[1] - row[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = [
            r#"{"parameter": "s", "range": [0, 0], "steps": 2, "fixed": {"gamma": 0.6}}"#,
            r#"{"parameter": "s", "range": [0.4, 0.1], "steps": 2, "fixed": {"gamma": 0.6}}"#,
            r#"{"parameter": "s", "range": [0.1, 0.4], "steps": 1, "fixed": {"gamma": 0.6}}"#,
            r#"{"parameter": "s", "range": [0.1, 1.0], "steps": 3, "fixed": {"gamma": 0.6}}"#,
            r#"{"parameter": "s", "range": [0.1, 0.4], "steps": 3}"#,
            r#"{"parameter": "p", "range": [0, 1.5], "steps": 3, "fixed": {"q": 0, "s": 0}}"#,
            r#"{"parameter": "p", "range": [0, 1], "steps": 3, "fixed": {"s": 0}}"#,
            r#"{"parameter": "p", "range": [0, 1], "steps": 3, "fixed": {"q": 0, "s": 0, "gamma": 1}}"#,
            r#"{"parameter": "x", "range": [0, 1], "steps": 3, "family": "mixed", "fixed": {"q": 0, "s": 0}}"#,
        ];
        for json in bad {
            let e = spec(json).run().unwrap_err();
            assert_eq!(e.exit_code(), 2, "{json}");
        }
    }

    #[test]
    fn invalid_density_is_a_math_error() {
        let e = spec(r#"{"parameter": "p", "range": [0, 1], "steps": 3, "fixed": {"q": 0.4, "s": 0}}"#)
            .run()
            .unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn greek_gamma_and_explicit_family() {
        let a = spec(r#"{"parameter": "γ", "range": [0, 1], "steps": 3, "fixed": {"s": 0.4}}"#).run().unwrap();
        let b = spec(r#"{"parameter": "gamma", "range": [0, 1], "steps": 3, "family": "pure", "fixed": {"s": 0.4}}"#)
            .run()
            .unwrap();
        assert_eq!(a, b);
    }
}
