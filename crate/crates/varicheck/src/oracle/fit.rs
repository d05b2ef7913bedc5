use super::variation::{increment, LambdaMode, VariationParams};
use crate::engine::{cubic_form, excess, g_form, k_parts, legendre_form, q_form, w_form};
use crate::error::{Error, Result};
use crate::problem::{PiecewisePath, ProblemSpec, Side, SidedPoint};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Fits whose scaled design matrix is worse than this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Least-squares coefficients of `increment(epsilon) ~ sum c_k epsilon^k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionFit {
    pub powers: Vec<i32>,
    pub coefficients: Vec<f64>,
    /// `max |increment - fit| / epsilon^max_power` over the samples.
    pub residual: f64,
    pub epsilons: Vec<f64>,
    pub increments: Vec<f64>,
    /// Condition number of the column-scaled design matrix.
    pub condition: f64,
}

impl ExpansionFit {
    pub fn coefficient(&self, power: i32) -> Option<f64> {
        self.powers.iter().position(|&p| p == power).map(|i| self.coefficients[i])
    }
}

/// `epsilon_max * 2^-k` for `k = 3, 4, ...`, `count` samples.
pub fn default_ladder(epsilon_max: f64, count: usize) -> Vec<f64> {
    (3..3 + count as i32).map(|k| epsilon_max * 0.5f64.powi(k)).collect()
}

/// 0.9 of the room on the needle's side, and below 1 when `lambda = epsilon`.
pub fn default_epsilon_max(path: &PiecewisePath, template: &VariationParams) -> Result<f64> {
    let room = 0.9 * template.room(path)?;
    Ok(match template.lambda {
        LambdaMode::EqualsEpsilon => room.min(0.9),
        LambdaMode::Fixed(_) => room,
    })
}

/// Fit the increment of the needle `template` (with its epsilon replaced by
/// each of `epsilons`) against the given powers of epsilon.
pub fn fit_expansion(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    template: &VariationParams,
    powers: &[i32],
    epsilons: &[f64],
    quad_tol: f64,
) -> Result<ExpansionFit> {
    if powers.is_empty() || epsilons.len() < 2 * powers.len() {
        return Err(Error::Query(format!(
            "need at least {} epsilons for {} powers, got {}",
            2 * powers.len(),
            powers.len(),
            epsilons.len()
        )));
    }
    if epsilons.windows(2).any(|w| !(w[0] > w[1])) || !(epsilons[epsilons.len() - 1] > 0.0) {
        return Err(Error::Query("epsilons must be positive and strictly decreasing".into()));
    }
    let increments: Vec<f64> = epsilons
        .par_iter()
        .map(|&e| increment(spec, path, &template.with_epsilon(e), quad_tol * e))
        .collect::<Result<_>>()?;
    let scale = epsilons[0];
    let a = DMatrix::from_fn(epsilons.len(), powers.len(), |i, j| (epsilons[i] / scale).powi(powers[j]));
    let b = DVector::from_column_slice(&increments);
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let y = svd.solve(&b, 0.0).map_err(|e| Error::Query(e.to_string()))?;
    let coefficients: Vec<f64> = powers.iter().zip(y.iter()).map(|(&p, c)| c / scale.powi(p)).collect();
    let top = *powers.iter().max().unwrap();
    let residual = epsilons
        .iter()
        .zip(&increments)
        .map(|(&e, &d)| {
            let fit: f64 = powers.iter().zip(&coefficients).map(|(&p, c)| c * e.powi(p)).sum();
            (d - fit).abs() / e.powi(top)
        })
        .fold(0.0, f64::max);
    Ok(ExpansionFit { powers: powers.to_vec(), coefficients, residual, epsilons: epsilons.to_vec(), increments, condition })
}

/// The three increment expansions that can be checked by fitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Proposition {
    /// Third order in epsilon with fixed `lambda`.
    #[serde(rename = "2.1")]
    P21,
    /// Second order in epsilon with fixed `lambda`.
    #[serde(rename = "2.2")]
    P22,
    /// Fourth order in epsilon with `lambda = epsilon`.
    #[serde(rename = "2.3")]
    P23,
}

impl FromStr for Proposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2.1" => Ok(Proposition::P21),
            "2.2" => Ok(Proposition::P22),
            "2.3" => Ok(Proposition::P23),
            o => Err(Error::Query(format!("unknown proposition `{o}`; expected 2.1, 2.2 or 2.3"))),
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Proposition::P21 => "2.1",
            Proposition::P22 => "2.2",
            Proposition::P23 => "2.3",
        })
    }
}

impl Proposition {
    /// Powers that are compared, followed by two that soak up the remainder.
    pub fn powers(self) -> Vec<i32> {
        match self {
            Proposition::P21 => vec![1, 2, 3, 4, 5],
            Proposition::P22 => vec![1, 2, 3, 4],
            Proposition::P23 => vec![2, 3, 4, 5, 6],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleTolerances {
    /// Absolute tolerance on the epsilon^1 coefficient.
    pub c1: f64,
    /// Absolute tolerance on the epsilon^2 coefficient.
    pub c2: f64,
    /// Tolerance on higher coefficients, relative to `max(1, |predicted|)`.
    pub higher: f64,
    /// Quadrature tolerance per unit of epsilon.
    pub quad: f64,
    /// Finite-difference step for the predicted values.
    pub fd_step: Option<f64>,
}

impl Default for OracleTolerances {
    fn default() -> Self {
        OracleTolerances { c1: 1e-6, c2: 1e-4, higher: 1e-2, quad: 1e-14, fd_step: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientCheck {
    pub power: i32,
    /// Which formula the prediction comes from, e.g. `Q1`, `W/2`.
    pub term: String,
    pub predicted: f64,
    pub fitted: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropositionReport {
    pub proposition: Proposition,
    pub variation: VariationParams,
    pub checks: Vec<CoefficientCheck>,
    pub fit: ExpansionFit,
    pub pass: bool,
}

/// Predicted coefficients for `prop` at the needle's point, keyed by power.
pub fn predicted_coefficients(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    template: &VariationParams,
    prop: Proposition,
    fd_step: Option<f64>,
) -> Result<Vec<(i32, String, f64)>> {
    let p = SidedPoint { t: template.theta, side: template.side };
    let sign = if template.side == Side::Minus { -1.0 } else { 1.0 };
    let xi = &template.xi;
    let lambda = || match template.lambda {
        LambdaMode::Fixed(l) => Ok(l),
        LambdaMode::EqualsEpsilon => Err(Error::Query(format!("proposition {prop} needs a fixed lambda"))),
    };
    let w_term = if sign > 0.0 { "W/2" } else { "-W/2" };
    Ok(match prop {
        Proposition::P21 | Proposition::P22 => {
            let l = lambda()?;
            let mut out = vec![
                (1, "Q1".to_string(), q_form(spec, path, p, l, xi, 1)?),
                (2, w_term.to_string(), sign * 0.5 * w_form(spec, path, p, l, xi, fd_step)?),
            ];
            if prop == Proposition::P21 {
                out.push((3, "G/6".into(), g_form(spec, path, p, l, xi, fd_step)? / 6.0));
            }
            out
        }
        Proposition::P23 => {
            if template.lambda != LambdaMode::EqualsEpsilon {
                return Err(Error::Query("proposition 2.3 needs lambda = epsilon".into()));
            }
            let e = excess(spec, path, p, xi)?;
            let leg = legendre_form(spec, path, p, xi)?;
            let (bracket, de, dleg) = k_parts(spec, path, p, xi, fd_step)?;
            let k0 = bracket + de + 0.5 * dleg;
            let c = cubic_form(spec, path, p, xi)?;
            let term = if sign > 0.0 { "Leg/2 + K/2 - C/6" } else { "Leg/2 - K/2 - C/6" };
            vec![
                (2, "E".into(), e),
                (3, "Leg/2".into(), 0.5 * leg),
                (4, term.into(), 0.5 * leg + sign * 0.5 * k0 - c / 6.0),
            ]
        }
    })
}

/// Fit the brute-force increment and compare with the predicted coefficients.
pub fn verify_proposition(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    template: &VariationParams,
    prop: Proposition,
    epsilons: Option<&[f64]>,
    tol: &OracleTolerances,
) -> Result<PropositionReport> {
    let predicted = predicted_coefficients(spec, path, template, prop, tol.fd_step)?;
    let powers = prop.powers();
    let ladder = match epsilons {
        Some(e) => e.to_vec(),
        None => default_ladder(default_epsilon_max(path, template)?, 2 * powers.len()),
    };
    let fit = fit_expansion(spec, path, template, &powers, &ladder, tol.quad)?;
    let checks: Vec<CoefficientCheck> = predicted
        .into_iter()
        .map(|(power, term, predicted)| {
            let fitted = fit.coefficient(power).unwrap();
            let abs_dev = (fitted - predicted).abs();
            let rel_dev = abs_dev / predicted.abs().max(1.0);
            let (tolerance, relative) = match power {
                1 => (tol.c1, false),
                2 => (tol.c2, false),
                _ => (tol.higher, true),
            };
            let pass = if relative { rel_dev <= tolerance } else { abs_dev <= tolerance };
            CoefficientCheck { power, term, predicted, fitted, abs_dev, rel_dev, tolerance, relative, pass }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(PropositionReport { proposition: prop, variation: template.clone(), checks, fit, pass })
}
