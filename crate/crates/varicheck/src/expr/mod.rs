//! Symbolic scalar expressions over `t`, `x1..xn` and `v1..vn`.
//!
//! Grammar (whitespace ignored, no implicit multiplication):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = primary [ "^" unary ] ;          (* right associative *)
//! primary = number | variable | func "(" expr ")" | "(" expr ")" ;
//! variable = "t" | "x" digits | "v" digits ;  (* 1 <= index <= n *)
//! func    = "sin" | "cos" | "exp" | "log" | "sqrt" | "abs" | "sgn" ;
//! number  = digits [ "." digits ] [ ("e" | "E") ["+" | "-"] digits ] ;
//! ```
//!
//! An exponent that is an integer literal gives an integer power. Any other
//! exponent `a^b` is rewritten to `exp(b*log(a))`. `sgn` exists so that the
//! derivative of `abs` can be printed and parsed back.

mod bundle;
mod diff;
mod parse;

pub use diff::{add, call, div, mul, neg, pow, sub};
pub use bundle::IntegrandBundle;
pub use parse::parse_expression;

use crate::error::{Error, Result};
use std::fmt;

/// Distance from the kink inside which `sgn` refuses to evaluate.
pub const KINK_TOL: f64 = 1e-12;

/// Variable identifier. Indices are zero based; `X(0)` prints as `x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    X(usize),
    V(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Sgn,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Sgn => "sgn",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "sgn" => Func::Sgn,
            _ => return None,
        })
    }

    fn apply(self, a: f64) -> std::result::Result<f64, &'static str> {
        match self {
            Func::Sin => Ok(a.sin()),
            Func::Cos => Ok(a.cos()),
            Func::Exp => Ok(a.exp()),
            Func::Log if a <= 0.0 => Err("log of a non-positive number"),
            Func::Log => Ok(a.ln()),
            Func::Sqrt if a < 0.0 => Err("sqrt of a negative number"),
            Func::Sqrt => Ok(a.sqrt()),
            Func::Abs => Ok(a.abs()),
            Func::Sgn if a.abs() <= KINK_TOL => Err("derivative of abs evaluated at its kink"),
            Func::Sgn => Ok(a.signum()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn c(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn is_const(&self, v: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == v)
    }

    /// Largest variable index used, per kind, as `(max x index + 1, max v index + 1)`.
    pub fn dims(&self) -> (usize, usize) {
        let mut d = (0, 0);
        self.visit_vars(&mut |v| match v {
            Var::X(i) => d.0 = d.0.max(i + 1),
            Var::V(i) => d.1 = d.1.max(i + 1),
            Var::T => {}
        });
        d
    }

    pub fn depends_on(&self, var: Var) -> bool {
        let mut hit = false;
        self.visit_vars(&mut |v| hit |= v == var);
        hit
    }

    fn visit_vars(&self, f: &mut impl FnMut(Var)) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => f(*v),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.visit_vars(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    /// Evaluate at `(t, x, v)`. Singular input or a non-finite intermediate is a
    /// domain error naming the offending subexpression.
    pub fn eval(&self, t: f64, x: &[f64], v: &[f64]) -> Result<f64> {
        self.eval_inner(t, x, v).map_err(|(node, reason)| Error::Domain {
            expr: node.to_string(),
            reason: reason.to_string(),
            t,
            x: x.to_vec(),
            v: v.to_vec(),
        })
    }

    fn eval_inner(&self, t: f64, x: &[f64], v: &[f64]) -> std::result::Result<f64, (&Expr, &'static str)> {
        let out = match self {
            Expr::Const(c) => *c,
            Expr::Var(Var::T) => t,
            Expr::Var(Var::X(i)) => *x.get(*i).ok_or((self, "x index beyond supplied state"))?,
            Expr::Var(Var::V(i)) => *v.get(*i).ok_or((self, "v index beyond supplied velocity"))?,
            Expr::Neg(a) => -a.eval_inner(t, x, v)?,
            Expr::Add(a, b) => a.eval_inner(t, x, v)? + b.eval_inner(t, x, v)?,
            Expr::Sub(a, b) => a.eval_inner(t, x, v)? - b.eval_inner(t, x, v)?,
            Expr::Mul(a, b) => a.eval_inner(t, x, v)? * b.eval_inner(t, x, v)?,
            Expr::Div(a, b) => {
                let num = a.eval_inner(t, x, v)?;
                let den = b.eval_inner(t, x, v)?;
                if den == 0.0 {
                    return Err((self, "division by zero"));
                }
                num / den
            }
            Expr::Pow(a, n) => {
                let base = a.eval_inner(t, x, v)?;
                if *n < 0 && base == 0.0 {
                    return Err((self, "negative power of zero"));
                }
                base.powi(*n)
            }
            Expr::Call(f, a) => f.apply(a.eval_inner(t, x, v)?).map_err(|r| (self, r))?,
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err((self, "non-finite value"))
        }
    }

    /// Replace every occurrence of `var` with `by`.
    pub fn substitute(&self, var: Var, by: &Expr) -> Expr {
        let s = |e: &Expr| Box::new(e.substitute(var, by));
        match self {
            Expr::Var(v) if *v == var => by.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(s(a)),
            Expr::Add(a, b) => Expr::Add(s(a), s(b)),
            Expr::Sub(a, b) => Expr::Sub(s(a), s(b)),
            Expr::Mul(a, b) => Expr::Mul(s(a), s(b)),
            Expr::Div(a, b) => Expr::Div(s(a), s(b)),
            Expr::Pow(a, n) => Expr::Pow(s(a), *n),
            Expr::Call(f, a) => Expr::Call(*f, s(a)),
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            Expr::Const(c) => *c >= 0.0 && !(c.is_sign_negative()),
            Expr::Var(_) | Expr::Call(..) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::V(i) => write!(f, "v{}", i + 1),
        }
    }
}

// Printing is fully parenthesised so that reparsing gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.is_sign_negative() => write!(f, "(-{:?})", -c),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) if matches!(**a, Expr::Const(_)) => write!(f, "(-({a}))"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => {
                if a.is_atomic() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_hand_values() {
        let e = parse_expression("(1-t)*v1^3 - 3*x1", 1).unwrap();
        assert_eq!(e.eval(0.0, &[0.0], &[1.0]).unwrap(), 1.0);
        let e = parse_expression("x1^2*(1 - v1^2)", 1).unwrap();
        assert_eq!(e.eval(0.5, &[2.0], &[3.0]).unwrap(), -32.0);
    }

    #[test]
    fn domain_errors_name_the_node() {
        let e = parse_expression("1 + log(x1)", 1).unwrap();
        match e.eval(0.0, &[-1.0], &[0.0]) {
            Err(Error::Domain { expr, .. }) => assert_eq!(expr, "log(x1)"),
            other => panic!("{other:?}"),
        }
        let e = parse_expression("1/(x1 - 1)", 1).unwrap();
        assert!(e.eval(0.0, &[1.0], &[0.0]).is_err());
        let e = parse_expression("exp(x1)", 1).unwrap();
        assert!(e.eval(0.0, &[1e5], &[0.0]).is_err());
    }

    #[test]
    fn abs_derivative_refuses_the_kink() {
        let e = parse_expression("abs(x1)", 1).unwrap();
        let d = e.differentiate(Var::X(0));
        assert_eq!(d.eval(0.0, &[2.0], &[0.0]).unwrap(), 1.0);
        assert!(d.eval(0.0, &[1e-13], &[0.0]).is_err());
        assert!(e.eval(0.0, &[0.0], &[0.0]).is_ok());
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "x1^2*(1 - v1^2)",
            "(v1 - v2^3)^2 + x1*v2^2",
            "-x1^2 + -2*t - (-(3))",
            "x1^(-2) + sqrt(t)^0.5",
            "sin(cos(exp(log(abs(t)))))/2.5e-7",
        ] {
            let e = parse_expression(s, 2).unwrap();
            let again = parse_expression(&e.to_string(), 2).unwrap();
            assert_eq!(e, again, "{s}");
        }
    }
}
