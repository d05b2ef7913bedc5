use crate::problem::Side;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Violated,
    Satisfied,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

/// The sense of a conclusion: `value >= 0`, `value <= 0` or `value = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">= 0")]
    NonNegative,
    #[serde(rename = "<= 0")]
    NonPositive,
    #[serde(rename = "= 0")]
    Zero,
}

impl Relation {
    pub fn holds(self, value: f64, tol: f64) -> bool {
        match self {
            Relation::NonNegative => value >= -tol,
            Relation::NonPositive => value <= tol,
            Relation::Zero => value.abs() <= tol,
        }
    }

    /// How badly `value` breaks the relation; larger is worse.
    pub fn badness(self, value: f64) -> f64 {
        match self {
            Relation::NonNegative => -value,
            Relation::NonPositive => value,
            Relation::Zero => value.abs(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::NonNegative => ">= 0",
            Relation::NonPositive => "<= 0",
            Relation::Zero => "= 0",
        })
    }
}

/// One hypothesis quantity and whether it was within tolerance of zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub quantity: String,
    pub value: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// An evaluation point of a conclusion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub side: Side,
    pub eta: Vec<f64>,
    pub lambda_bar: Option<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TestedValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl fmt::Display for TestedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestedValue::Scalar(v) => write!(f, "{v}"),
            TestedValue::Vector(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Threshold for values computed by direct evaluation.
    pub zero_tol: f64,
    /// Threshold for values that involve finite-difference time derivatives.
    pub derivative_tol: f64,
    /// Absolute finite-difference step; `None` means 1e-4 of the segment length.
    pub fd_step: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero_tol: 1e-9, derivative_tol: 1e-6, fd_step: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// e.g. `4.2` or `3.7(j)`.
    pub theorem: String,
    /// The printed condition tested, e.g. `(4.10)`.
    pub condition: String,
    pub relation: Relation,
    pub mode: Mode,
    pub verdict: Verdict,
    pub conclusion: String,
    pub tested_value: TestedValue,
    pub evidence: Vec<Evidence>,
    pub samples: Vec<Sample>,
    pub witness: Option<Sample>,
    pub tolerances: Tolerances,
}

impl ConditionReport {
    pub fn conclusion_text(verdict: Verdict, mode: Mode) -> String {
        match (verdict, mode) {
            (Verdict::Violated, Mode::Strong) => "not a strong local minimum".into(),
            (Verdict::Violated, Mode::Weak) => "not a weak local minimum".into(),
            (Verdict::Satisfied, _) => "inconclusive: candidate retained".into(),
            (Verdict::NotApplicable, _) => "hypotheses not met".into(),
        }
    }
}
