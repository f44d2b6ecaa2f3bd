//! Reference values for the two- and three-dimensional worked examples,
//! recomputed and compared within absolute tolerances.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use lowdin_core::linalg::hermitian_eig;
use lowdin_core::measures::{participation_ratio, shannon_entropy};
use lowdin_core::ortho::maximally_coherent_image;
use lowdin_core::states::{
    beta_state, closed_form_2d_weights, golden_state_3d, lowdin_coeffs, lowdin_density, weights_density,
    weights_pure,
};
use lowdin_core::{BasisSet, Complex64, ComplexMatrix, DensityOperator, GramMatrix, PureState, Sign};

use crate::error::{CliError, CliResult};
use crate::format::fmt_sig;

/// Reference values quoted to three decimals.
pub const TOL_3DP: f64 = 1e-3;
/// Reference values quoted to two decimals.
pub const TOL_2DP: f64 = 1e-2;
pub const TOL_EXACT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub id: String,
    pub description: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
}

impl CheckRow {
    pub fn delta(&self) -> f64 {
        (self.computed - self.expected).abs()
    }

    pub fn passed(&self) -> bool {
        self.delta() <= self.tolerance
    }
}

struct Table(Vec<CheckRow>);

impl Table {
    fn push(&mut self, id: &str, description: impl Into<String>, expected: f64, computed: f64, tolerance: f64) {
        self.0.push(CheckRow {
            id: id.into(),
            description: description.into(),
            expected,
            computed,
            tolerance,
        });
    }
}

fn rho_l(p: f64, q: f64, s: f64) -> lowdin_core::Result<ComplexMatrix> {
    Ok(lowdin_density(&DensityOperator::two_dim(p, q, s)?)?.matrix)
}

fn max_deviation(a: &[Complex64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, &y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Every reference value with its recomputed counterpart.
pub fn rows() -> lowdin_core::Result<Vec<CheckRow>> {
    let mut t = Table(Vec::new());

    let half = GramMatrix::two_dim(0.5)?;
    let eig = hermitian_eig(half.matrix())?;
    t.push("eig.1", "lambda_1 of O, s = 0.5", 0.5, eig.eigenvalues[0], TOL_EXACT);
    t.push("eig.2", "lambda_2 of O, s = 0.5", 1.5, eig.eigenvalues[1], TOL_EXACT);
    t.push("cond", "condition number of O, s = 0.5", 3.0, half.condition_number(), TOL_EXACT);

    let r = half.sqrt();
    t.push("sqrt.11", "O^1/2 [1,1], s = 0.5", 0.966, r[(0, 0)].re, TOL_3DP);
    t.push("sqrt.12", "O^1/2 [1,2], s = 0.5", 0.259, r[(0, 1)].re, TOL_3DP);
    t.push("sqrt.21", "O^1/2 [2,1], s = 0.5", 0.259, r[(1, 0)].re, TOL_3DP);
    t.push("sqrt.22", "O^1/2 [2,2], s = 0.5", 0.966, r[(1, 1)].re, TOL_3DP);

    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let s1 = BasisSet::new(ComplexMatrix::from_real(2, 2, &[1.0 / r2, r2 / r3, 1.0 / r2, 1.0 / r3])?)?;
    t.push("overlap.s1", "overlap of the first basis pair", 0.9856, s1.gram()?.overlap(0, 1).re, 1e-4);

    let m = rho_l(0.6, 0.2, 0.5)?;
    t.push("rhoL1.11", "rho_L [1,1], rho = [[.6,.2],[.2,.4]], s = 0.5", 0.572, m[(0, 0)].re, TOL_3DP);
    t.push("rhoL1.12", "rho_L [1,2], rho = [[.6,.2],[.2,.4]], s = 0.5", 0.375, m[(0, 1)].re, TOL_3DP);
    t.push("rhoL1.22", "rho_L [2,2], rho = [[.6,.2],[.2,.4]], s = 0.5", 0.428, m[(1, 1)].re, TOL_3DP);
    let m = rho_l(0.6, 0.0, 0.5)?;
    t.push("rhoL2.11", "rho_L [1,1], rho = diag(.6,.4), s = 0.5", 0.587, m[(0, 0)].re, TOL_3DP);
    t.push("rhoL2.12", "rho_L [1,2], rho = diag(.6,.4), s = 0.5", 0.25, m[(0, 1)].re, TOL_3DP);
    t.push("rhoL2.22", "rho_L [2,2], rho = diag(.6,.4), s = 0.5", 0.413, m[(1, 1)].re, TOL_3DP);
    let m = rho_l(0.5, 0.0, 0.5)?;
    t.push("rhoL3.11", "rho_L [1,1], rho = I/2, s = 0.5", 0.5, m[(0, 0)].re, TOL_EXACT);
    t.push("rhoL3.12", "rho_L [1,2], rho = I/2, s = 0.5", 0.25, m[(0, 1)].re, TOL_EXACT);
    t.push("rhoL3.22", "rho_L [2,2], rho = I/2, s = 0.5", 0.5, m[(1, 1)].re, TOL_EXACT);

    let beta_s04 = beta_state(0.4, 0.6)?;
    let w = weights_pure(&beta_s04);
    t.push("beta.s04.w1", "beta-state w_1, s = 0.4, gamma = 0.6", 0.66, w.as_slice()[0], TOL_2DP);
    t.push("beta.s04.w2", "beta-state w_2, s = 0.4, gamma = 0.6", 0.34, w.as_slice()[1], TOL_2DP);
    t.push("beta.s04.H", "beta-state entropy, s = 0.4, gamma = 0.6", 0.925, shannon_entropy(&w), 2e-3);
    let w = weights_pure(&beta_state(0.1, 0.6)?);
    t.push("beta.s01.w1", "beta-state w_1, s = 0.1, gamma = 0.6", 0.715, w.as_slice()[0], TOL_2DP);
    t.push("beta.s01.w2", "beta-state w_2, s = 0.1, gamma = 0.6", 0.285, w.as_slice()[1], TOL_2DP);
    t.push("beta.s01.H", "beta-state entropy, s = 0.1, gamma = 0.6", 0.862, shannon_entropy(&w), 2e-3);
    let norm = (1.0 + 0.36 + 2.0 * 0.6 * 0.4f64).sqrt();
    t.push("beta.norm", "beta-state normalization divisor, s = 0.4", 1.3565, norm, 1e-4);
    t.push("beta.coeff", "beta-state a_1, s = 0.4, gamma = 0.6", 1.0 / 1.3565, beta_s04.coeffs()[0].re, 1e-4);
    let w = weights_pure(&beta_state(0.0, 1.0)?);
    t.push("beta.s0.w1", "w_1, s = 0, gamma = 1", 0.5, w.as_slice()[0], 1e-12);
    t.push("beta.s0.H", "entropy, s = 0, gamma = 1", 1.0, shannon_entropy(&w), 1e-12);

    for s in [0.0, -0.1, -0.3, -0.49] {
        let w = weights_pure(&golden_state_3d(s)?);
        let worst = w.as_slice().iter().map(|x| (x - 1.0 / 3.0).abs()).fold(0.0, f64::max);
        t.push("golden.w", format!("max |w_k - 1/3|, golden state, s = {s}"), 0.0, worst, TOL_EXACT);
        t.push("golden.pr", format!("PR, golden state, s = {s}"), 3.0, participation_ratio(&w), TOL_EXACT);
    }

    let w = closed_form_2d_weights(0.6, 0.2, 0.5)?;
    t.push("closed.w1", "closed-form w_1, (p, q, s) = (0.6, 0.2, 0.5)", 0.5722, w.as_slice()[0], 1e-4);
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..4 {
                let p = 0.1 + 0.2 * i as f64;
                let q_max = (p * (1.0 - p)).sqrt();
                let q = -q_max + 0.5 * q_max * j as f64;
                let s = -0.75 + 0.5 * k as f64;
                let closed = closed_form_2d_weights(p, q, s)?;
                let numeric = weights_density(&DensityOperator::two_dim(p, q, s)?)?;
                worst = worst.max((closed.as_slice()[0] - numeric.as_slice()[0]).abs());
                points += 1;
            }
        }
    }
    t.push("closed.grid", format!("max closed-form error over {points} grid points"), 0.0, worst, TOL_EXACT);

    for (sign, target, values) in [
        (Sign::Plus, [FRAC_1_SQRT_2, FRAC_1_SQRT_2], [0.0, -0.3, -0.6]),
        (Sign::Minus, [FRAC_1_SQRT_2, -FRAC_1_SQRT_2], [0.0, 0.3, 0.6]),
    ] {
        for s in values {
            let gram = GramMatrix::two_dim(s)?;
            let lambda = match sign {
                Sign::Plus => 1.0 + s,
                Sign::Minus => 1.0 - s,
            };
            let sgn = if sign == Sign::Plus { 1.0 } else { -1.0 };
            let a = 1.0 / (2.0 * lambda).sqrt();
            let state = PureState::new(gram.clone(), vec![Complex64::from(a), Complex64::from(sgn * a)])?;
            let label = if sign == Sign::Plus { "+" } else { "-" };
            t.push(
                "coherent.map",
                format!("max |b - (1,{label}1)/sqrt2|, s = {s}"),
                0.0,
                max_deviation(&lowdin_coeffs(&state), &target),
                TOL_EXACT,
            );
            let image = maximally_coherent_image(&gram, sign)?;
            t.push(
                "coherent.image",
                format!("max |a - (1,{label}1)/sqrt(2 lambda)|, s = {s}"),
                0.0,
                max_deviation(image.coeffs(), &[a, sgn * a]),
                TOL_EXACT,
            );
        }
    }

    Ok(t.0)
}

/// The rendered table and the number of failed rows.
pub fn render(rows: &[CheckRow]) -> (String, usize) {
    let mut out = String::new();
    writeln!(
        out,
        "{:<15} {:<52} {:>14} {:>14} {:>10} {:>8}  result",
        "id", "description", "expected", "computed", "|delta|", "tol"
    )
    .expect("writing to a string");
    let mut failed = 0;
    for r in rows {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        if !r.passed() {
            failed += 1;
        }
        writeln!(
            out,
            "{:<15} {:<52} {:>14} {:>14} {:>10.2e} {:>8.0e}  {status}",
            r.id,
            r.description,
            fmt_sig(r.expected),
            fmt_sig(r.computed),
            r.delta(),
            r.tolerance
        )
        .expect("writing to a string");
    }
    writeln!(out, "{} of {} checks passed", rows.len() - failed, rows.len()).expect("writing to a string");
    (out, failed)
}

/// Prints the table; fails with exit code 1 if any row failed.
pub fn cmd_paper_check() -> CliResult<String> {
    let rows = rows()?;
    let (table, failed) = render(&rows);
    if failed > 0 {
        print!("{table}");
        return Err(CliError::CheckFailed {
            failed,
            total: rows.len(),
        });
    }
    Ok(table)
}
