//! Symbolic differentiation. The only simplification is constant folding and
//! the 0/1 identities, applied by the constructors below.

use super::{Expr, Func, Var};

fn folded(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Const(v))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        _ if a.is_const(0.0) => b,
        _ if b.is_const(0.0) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        _ if b.is_const(0.0) => a,
        _ if a.is_const(0.0) => neg(b),
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        _ if a.is_const(0.0) || b.is_const(0.0) => Expr::Const(0.0),
        _ if a.is_const(1.0) => b,
        _ if b.is_const(1.0) => a,
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        if *y != 0.0 {
            if let Some(e) = folded(x / y) {
                return e;
            }
        }
    }
    if b.is_const(1.0) {
        return a;
    }
    Expr::Div(Box::new(a), Box::new(b))
}

pub fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Const(1.0),
        1 => a,
        _ => {
            if let Expr::Const(c) = a {
                if c != 0.0 || n > 0 {
                    if let Some(e) = folded(c.powi(n)) {
                        return e;
                    }
                }
            }
            Expr::Pow(Box::new(a), n)
        }
    }
}

pub fn call(f: Func, a: Expr) -> Expr {
    if let Expr::Const(c) = a {
        if let Ok(v) = f.apply(c) {
            if let Some(e) = folded(v) {
                return e;
            }
        }
    }
    Expr::Call(f, Box::new(a))
}

impl Expr {
    /// Exact symbolic partial derivative with respect to `var`.
    pub fn differentiate(&self, var: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(v) => Expr::Const(if *v == var { 1.0 } else { 0.0 }),
            Expr::Neg(a) => neg(a.differentiate(var)),
            Expr::Add(a, b) => add(a.differentiate(var), b.differentiate(var)),
            Expr::Sub(a, b) => sub(a.differentiate(var), b.differentiate(var)),
            Expr::Mul(a, b) => add(
                mul(a.differentiate(var), (**b).clone()),
                mul((**a).clone(), b.differentiate(var)),
            ),
            Expr::Div(a, b) => {
                let da = a.differentiate(var);
                let db = b.differentiate(var);
                if db.is_const(0.0) {
                    div(da, (**b).clone())
                } else {
                    div(
                        sub(mul(da, (**b).clone()), mul((**a).clone(), db)),
                        pow((**b).clone(), 2),
                    )
                }
            }
            Expr::Pow(a, n) => {
                let da = a.differentiate(var);
                if da.is_const(0.0) {
                    return Expr::Const(0.0);
                }
                mul(mul(Expr::Const(*n as f64), pow((**a).clone(), n - 1)), da)
            }
            Expr::Call(f, a) => {
                let da = a.differentiate(var);
                if da.is_const(0.0) {
                    return Expr::Const(0.0);
                }
                let inner = (**a).clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, inner),
                    Func::Cos => neg(call(Func::Sin, inner)),
                    Func::Exp => call(Func::Exp, inner),
                    Func::Log => div(Expr::Const(1.0), inner),
                    Func::Sqrt => div(Expr::Const(0.5), call(Func::Sqrt, inner)),
                    Func::Abs => call(Func::Sgn, inner),
                    Func::Sgn => Expr::Const(0.0),
                };
                mul(outer, da)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expression;
    use super::*;

    #[test]
    fn fixture_partials() {
        let l = parse_expression("x1^2*(1-v1^2)", 1).unwrap();
        let dv = l.differentiate(Var::V(0));
        for (x, v) in [(1.5, 0.3), (-2.0, 4.0)] {
            assert_eq!(dv.eval(0.0, &[x], &[v]).unwrap(), -2.0 * x * x * v);
        }
        assert_eq!(dv.eval(0.7, &[0.0], &[0.0]).unwrap(), 0.0);

        let x1 = parse_expression("x1", 1).unwrap();
        assert_eq!(x1.differentiate(Var::T), Expr::Const(0.0));

        let l = parse_expression("(v1-v2^3)^2 + x1*v2^2", 2).unwrap();
        let dx = l.differentiate(Var::X(0));
        assert_eq!(dx.eval(0.0, &[1.0, 2.0], &[5.0, 3.0]).unwrap(), 9.0);
    }

    #[test]
    fn identities_fold() {
        assert_eq!(mul(Expr::Const(0.0), Expr::Var(Var::T)), Expr::Const(0.0));
        assert_eq!(add(Expr::Const(0.0), Expr::Var(Var::T)), Expr::Var(Var::T));
        assert_eq!(pow(Expr::Var(Var::T), 1), Expr::Var(Var::T));
        assert_eq!(div(Expr::Const(1.0), Expr::Const(0.0)), Expr::Div(Box::new(Expr::Const(1.0)), Box::new(Expr::Const(0.0))));
        let e = parse_expression("3*t^2", 1).unwrap();
        assert_eq!(e.differentiate(Var::T).differentiate(Var::T).differentiate(Var::T), Expr::Const(0.0));
    }
}
