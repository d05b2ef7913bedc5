use super::{parse_expression, Expr, Var};
use crate::error::Result;

/// An integrand with every partial derivative the condition formulas need,
/// differentiated once at construction.
#[derive(Clone, Debug)]
pub struct IntegrandBundle {
    pub n: usize,
    pub l: Expr,
    pub lx: Vec<Expr>,
    pub lv: Vec<Expr>,
    /// `lxx[i][j] = ∂²L/∂x_i∂x_j`
    pub lxx: Vec<Vec<Expr>>,
    /// `lxv[i][j] = ∂²L/∂x_i∂v_j`
    pub lxv: Vec<Vec<Expr>>,
    pub lvv: Vec<Vec<Expr>>,
    pub lvvv: Vec<Vec<Vec<Expr>>>,
    /// `lvt[i] = ∂²L/∂v_i∂t`
    pub lvt: Vec<Expr>,
    /// `lvx[i][j] = ∂²L/∂v_i∂x_j`
    pub lvx: Vec<Vec<Expr>>,
}

impl IntegrandBundle {
    pub fn new(l: Expr, n: usize) -> IntegrandBundle {
        let xs: Vec<Var> = (0..n).map(Var::X).collect();
        let vs: Vec<Var> = (0..n).map(Var::V).collect();
        let grad = |e: &Expr, vars: &[Var]| -> Vec<Expr> { vars.iter().map(|v| e.differentiate(*v)).collect() };
        let lx = grad(&l, &xs);
        let lv = grad(&l, &vs);
        let lxx = lx.iter().map(|e| grad(e, &xs)).collect();
        let lxv = lx.iter().map(|e| grad(e, &vs)).collect();
        let lvv: Vec<Vec<Expr>> = lv.iter().map(|e| grad(e, &vs)).collect();
        let lvvv = lvv.iter().map(|row| row.iter().map(|e| grad(e, &vs)).collect()).collect();
        let lvt = lv.iter().map(|e| e.differentiate(Var::T)).collect();
        let lvx = lv.iter().map(|e| grad(e, &xs)).collect();
        IntegrandBundle { n, l, lx, lv, lxx, lxv, lvv, lvvv, lvt, lvx }
    }

    pub fn parse(text: &str, n: usize) -> Result<IntegrandBundle> {
        Ok(IntegrandBundle::new(parse_expression(text, n)?, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_matches_fresh_differentiation() {
        let b = IntegrandBundle::parse("(v1 - v2^3)^2 + x1*v2^2 + sin(t*x2)*v1", 2).unwrap();
        let fresh = b.l.differentiate(Var::V(1)).differentiate(Var::V(0));
        assert_eq!(b.lvv[1][0], fresh);
        let pts = [(0.3, [0.2, -0.7], [1.1, 0.4]), (0.9, [1.0, 2.0], [-0.5, 0.3])];
        for (t, x, v) in pts {
            for i in 0..2 {
                for j in 0..2 {
                    let a = b.lvv[i][j].eval(t, &x, &v).unwrap();
                    let c = b.lvv[j][i].eval(t, &x, &v).unwrap();
                    assert!((a - c).abs() <= 1e-9 * a.abs().max(1.0));
                    let a = b.lxx[i][j].eval(t, &x, &v).unwrap();
                    let c = b.lxx[j][i].eval(t, &x, &v).unwrap();
                    assert!((a - c).abs() <= 1e-9 * a.abs().max(1.0));
                }
            }
        }
    }
}
