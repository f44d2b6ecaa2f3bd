use std::fs;
use std::path::Path;

use lowdin_core::io::{BasisFile, LoadedState, StateFile};
use lowdin_core::{ortho, Method};
use serde::de::DeserializeOwned;

use crate::error::{CliError, CliResult};
use crate::report::AnalysisReport;

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub(crate) fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))
}

pub fn parse_method(s: &str) -> CliResult<Method> {
    s.parse()
        .map_err(|_| CliError::input("InvalidMethod", format!("unknown method {s:?}; expected gram-schmidt, lowdin-sym or lowdin-can")))
}

/// Parses a 1-based comma-separated permutation such as `2,1` into
/// 0-based indices.
pub fn parse_order(s: &str, count: usize) -> CliResult<Vec<usize>> {
    let bad = |msg: String| CliError::input("InvalidOrder", msg);
    let order = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .map(|k| k - 1)
                .ok_or_else(|| bad(format!("order entry {t:?} is not a positive integer")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if order.len() != count {
        return Err(bad(format!("order has {} entries for {count} vectors", order.len())));
    }
    let mut seen = vec![false; count];
    for &k in &order {
        if k >= count || seen[k] {
            return Err(bad(format!("order {s:?} is not a permutation of 1..{count}")));
        }
        seen[k] = true;
    }
    Ok(order)
}

pub fn orthogonalize(input: BasisFile, method: Method, order: Option<&str>) -> CliResult<AnalysisReport> {
    let basis = input.to_basis()?;
    let order = match order {
        Some(_) if method != Method::GramSchmidt => {
            return Err(CliError::input(
                "InvalidOrder",
                format!("--order only applies to gram-schmidt, not {}", method.name()),
            ))
        }
        Some(s) => Some(parse_order(s, basis.num_vectors())?),
        None if method == Method::GramSchmidt => Some((0..basis.num_vectors()).collect()),
        None => None,
    };
    let result = ortho::orthogonalize(&basis, method, order.as_deref())?;
    let cond = basis.gram()?.condition_number();
    Ok(AnalysisReport::orthogonalization(input, &result, order.as_deref(), cond))
}

pub fn weights(input: StateFile) -> CliResult<AnalysisReport> {
    match input.to_state()? {
        LoadedState::Pure(state) => Ok(AnalysisReport::pure_weights(input, &state)),
        LoadedState::Mixed(op) => Ok(AnalysisReport::density_weights(input, &op)?),
    }
}

pub fn cmd_orthogonalize(basis: &Path, method: &str, order: Option<&str>, out: Option<&Path>) -> CliResult<String> {
    let method = parse_method(method)?;
    let report = orthogonalize(read_json(basis)?, method, order)?;
    emit(&report, out)
}

pub fn cmd_weights(state: &Path, out: Option<&Path>) -> CliResult<String> {
    let report = weights(read_json(state)?)?;
    emit(&report, out)
}

/// Writes the report to `out` and returns nothing to print, or returns the
/// JSON for standard output.
fn emit(report: &AnalysisReport, out: Option<&Path>) -> CliResult<String> {
    let json = report.to_json();
    match out {
        Some(path) => write_text(path, &json).map(|_| String::new()),
        None => Ok(json),
    }
}
