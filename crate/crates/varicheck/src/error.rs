//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("variable `{name}` at byte {pos} is out of range for n = {n}")]
    IndexOutOfRange { name: String, pos: usize, n: usize },

    #[error("domain error in `{expr}` at t={t}, x={x:?}, v={v:?}: {reason}")]
    Domain {
        expr: String,
        reason: String,
        t: f64,
        x: Vec<f64>,
        v: Vec<f64>,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("continuity violation at t={at}: gap {gap:e}")]
    Continuity { at: f64, gap: f64 },

    #[error("derivative jump at undeclared corner t={at}: gap {gap:e}")]
    UndeclaredCorner { at: f64, gap: f64 },

    #[error("boundary mismatch at t={at}: gap {gap:e}")]
    Boundary { at: f64, gap: f64 },

    #[error("side violation: {0}")]
    Side(String),

    #[error("finite-difference mesh does not fit: {0}")]
    Mesh(String),

    #[error("quadrature did not converge on [{a}, {b}] (estimate {err:e} > {tol:e})")]
    Quadrature { a: f64, b: f64, err: f64, tol: f64 },

    #[error("invalid query: {0}")]
    Query(String),

    #[error("invalid variation: {0}")]
    Geometry(String),

    #[error("ill-conditioned fit (condition number {0:e})")]
    IllConditioned(f64),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
