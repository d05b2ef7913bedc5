//! Excess-type functionals evaluated along a path at a one-sided point.
//!
//! `zeta` always means `lambda/(lambda-1) * xi`, the slope on the second piece
//! of a needle variation.

use super::fd::time_derivative;
use crate::error::{Error, Result};
use crate::problem::{PiecewisePath, ProblemSpec, SidedPoint};

struct Base {
    t: f64,
    x: Vec<f64>,
    v: Vec<f64>,
}

fn base(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<Base> {
    if xi.len() != spec.n {
        return Err(Error::Query(format!("direction has length {}, expected {}", xi.len(), spec.n)));
    }
    let (x, v) = path.state(p)?;
    Ok(Base { t: p.t, x, v })
}

fn shifted(v: &[f64], xi: &[f64]) -> Vec<f64> {
    v.iter().zip(xi).map(|(a, b)| a + b).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn zeta(lambda: f64, xi: &[f64]) -> Vec<f64> {
    let k = lambda / (lambda - 1.0);
    xi.iter().map(|x| k * x).collect()
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::Query(format!("lambda must lie in [0, 1), got {lambda}")))
    }
}

/// `E(t±, xi) = L(t, x, v+xi) - L(t, x, v) - L_v(t, x, v)·xi`.
pub fn excess(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<f64> {
    let b = base(spec, path, p, xi)?;
    let l = &spec.integrand;
    let w = shifted(&b.v, xi);
    let mut lin = 0.0;
    for (e, s) in l.lv.iter().zip(xi) {
        lin += e.eval(b.t, &b.x, &b.v)? * s;
    }
    Ok(l.l.eval(b.t, &b.x, &w)? - l.l.eval(b.t, &b.x, &b.v)? - lin)
}

/// `xi' L_vv(t±) xi`.
pub fn legendre_form(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<f64> {
    let b = base(spec, path, p, xi)?;
    quad_form(&spec.integrand.lvv, b.t, &b.x, &b.v, xi)
}

fn quad_form(m: &[Vec<crate::expr::Expr>], t: f64, x: &[f64], v: &[f64], xi: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for (i, row) in m.iter().enumerate() {
        if xi[i] == 0.0 {
            continue;
        }
        for (j, e) in row.iter().enumerate() {
            if xi[j] != 0.0 {
                s += xi[i] * e.eval(t, x, v)? * xi[j];
            }
        }
    }
    Ok(s)
}

/// `L_x(t, x, v+xi) - L_x(t, x, v)`.
pub fn delta_lx(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<Vec<f64>> {
    let b = base(spec, path, p, xi)?;
    let w = shifted(&b.v, xi);
    spec.integrand
        .lx
        .iter()
        .map(|e| Ok(e.eval(b.t, &b.x, &w)? - e.eval(b.t, &b.x, &b.v)?))
        .collect()
}

/// `eta' L_xx(t, x, v+shift) eta`.
pub fn lxx_form(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, shift: &[f64], eta: &[f64]) -> Result<f64> {
    let b = base(spec, path, p, shift)?;
    let w = shifted(&b.v, shift);
    quad_form(&spec.integrand.lxx, b.t, &b.x, &w, eta)
}

/// `(xi' L_vv xi)_v' xi = sum L_vvv xi xi xi`.
pub fn cubic_form(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<f64> {
    let b = base(spec, path, p, xi)?;
    let mut s = 0.0;
    for (i, m) in spec.integrand.lvvv.iter().enumerate() {
        for (j, row) in m.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                let w = xi[i] * xi[j] * xi[k];
                if w != 0.0 {
                    s += e.eval(b.t, &b.x, &b.v)? * w;
                }
            }
        }
    }
    Ok(s)
}

/// `xi'[L_x(t, x, v+xi) - L_x(t, x, v) - L_xv(t, x, v) xi]`.
pub fn k_bracket(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, xi: &[f64]) -> Result<f64> {
    let b = base(spec, path, p, xi)?;
    let d = delta_lx(spec, path, p, xi)?;
    let mut s = dot(&d, xi);
    for (i, row) in spec.integrand.lxv.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if xi[i] != 0.0 && xi[j] != 0.0 {
                s -= xi[i] * e.eval(b.t, &b.x, &b.v)? * xi[j];
            }
        }
    }
    Ok(s)
}

/// `Q_i = lambda^i E(xi) + (1 - lambda^i) E(zeta)`.
pub fn q_form(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, lambda: f64, xi: &[f64], i: u32) -> Result<f64> {
    check_lambda(lambda)?;
    let li = lambda.powi(i as i32);
    let e1 = excess(spec, path, p, xi)?;
    let e2 = excess(spec, path, p, &zeta(lambda, xi))?;
    Ok(li * e1 + (1.0 - li) * e2)
}

/// `M_i = lambda^i ΔL_x(xi)·xi + (1-lambda)(1/2+lambda)^(i-1) ΔL_x(zeta)·xi`.
pub fn m_form(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint, lambda: f64, xi: &[f64], i: u32) -> Result<f64> {
    check_lambda(lambda)?;
    let a = dot(&delta_lx(spec, path, p, xi)?, xi);
    let b = dot(&delta_lx(spec, path, p, &zeta(lambda, xi))?, xi);
    Ok(lambda.powi(i as i32) * a + (1.0 - lambda) * (0.5 + lambda).powi(i as i32 - 1) * b)
}

/// `W = lambda M_1 + d/dt Q_2`.
pub fn w_form(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    p: SidedPoint,
    lambda: f64,
    xi: &[f64],
    step: Option<f64>,
) -> Result<f64> {
    let m1 = m_form(spec, path, p, lambda, xi, 1)?;
    let dq2 = time_derivative(path, |q| q_form(spec, path, q, lambda, xi, 2), p, 1, step)?;
    Ok(lambda * m1 + dq2)
}

/// `G = lambda^2 xi'[lambda L_xx(xi) + (1-lambda) L_xx(zeta)] xi + 2 lambda d/dt M_2 + d²/dt² Q_3`.
pub fn g_form(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    p: SidedPoint,
    lambda: f64,
    xi: &[f64],
    step: Option<f64>,
) -> Result<f64> {
    check_lambda(lambda)?;
    let z = zeta(lambda, xi);
    let hess = lambda * lxx_form(spec, path, p, xi, xi)? + (1.0 - lambda) * lxx_form(spec, path, p, &z, xi)?;
    let dm2 = time_derivative(path, |q| m_form(spec, path, q, lambda, xi, 2), p, 1, step)?;
    let ddq3 = time_derivative(path, |q| q_form(spec, path, q, lambda, xi, 3), p, 2, step)?;
    Ok(lambda * lambda * hess + 2.0 * lambda * dm2 + ddq3)
}

/// `K = bracket + d/dt E(xi) + (1+eps)/(2(1-eps)) d/dt xi'L_vv xi`.
pub fn k_form(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    p: SidedPoint,
    epsilon: f64,
    xi: &[f64],
    step: Option<f64>,
) -> Result<f64> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Query(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    let (bracket, de, dleg) = k_parts(spec, path, p, xi, step)?;
    Ok(bracket + de + (1.0 + epsilon) / (2.0 * (1.0 - epsilon)) * dleg)
}

/// The three summands of K: bracket, d/dt E, d/dt Legendre form.
pub fn k_parts(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    p: SidedPoint,
    xi: &[f64],
    step: Option<f64>,
) -> Result<(f64, f64, f64)> {
    let bracket = k_bracket(spec, path, p, xi)?;
    let de = time_derivative(path, |q| excess(spec, path, q, xi), p, 1, step)?;
    let dleg = time_derivative(path, |q| legendre_form(spec, path, q, xi), p, 1, step)?;
    Ok((bracket, de, dleg))
}

/// Left side of the interval inequality
/// `eta'[lambda L_xx(eta) + (1-lambda) L_xx(zeta)] eta - d/dt ΔL_x(eta)·eta`.
pub fn interval_second_order(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    p: SidedPoint,
    lambda: f64,
    eta: &[f64],
    step: Option<f64>,
) -> Result<f64> {
    check_lambda(lambda)?;
    let z = zeta(lambda, eta);
    let hess = lambda * lxx_form(spec, path, p, eta, eta)? + (1.0 - lambda) * lxx_form(spec, path, p, &z, eta)?;
    let d = time_derivative(path, |q| Ok(dot(&delta_lx(spec, path, q, eta)?, eta)), p, 1, step)?;
    Ok(hess - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::fixture;

    fn ex51() -> (ProblemSpec, PiecewisePath) {
        fixture("x1^2*(1 - v1^2)", 1, "\"free\"", &["0"])
    }
    fn ex53() -> (ProblemSpec, PiecewisePath) {
        fixture("(1-t)*v1^3 - 3*x1", 1, "[1]", &["t"])
    }
    fn ex54() -> (ProblemSpec, PiecewisePath) {
        fixture("(v1 - v2^3)^2 + x1*v2^2", 2, "[0,0]", &["0", "0"])
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn excess_and_legendre() {
        let (s, p) = ex53();
        assert_eq!(excess(&s, &p, SidedPoint::plus(0.0), &[1.0]).unwrap(), 4.0);
        assert_eq!(excess(&s, &p, SidedPoint::plus(0.3), &[0.0]).unwrap(), 0.0);
        assert_eq!(legendre_form(&s, &p, SidedPoint::plus(0.0), &[1.0]).unwrap(), 6.0);
        assert_eq!(legendre_form(&s, &p, SidedPoint::plus(0.2), &[0.0]).unwrap(), 0.0);
        let (s, p) = ex54();
        assert_eq!(excess(&s, &p, SidedPoint::two_sided(0.4), &[1.0, 1.0]).unwrap(), 0.0);
        assert_eq!(legendre_form(&s, &p, SidedPoint::two_sided(0.4), &[2.0, 5.0]).unwrap(), 8.0);
    }

    #[test]
    fn delta_lx_values() {
        let (s, p) = ex54();
        assert_eq!(delta_lx(&s, &p, SidedPoint::plus(0.1), &[0.0, 3.0]).unwrap(), vec![9.0, 0.0]);
        assert_eq!(delta_lx(&s, &p, SidedPoint::plus(0.1), &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        let (s, p) = ex51();
        for xi in [-3.0, 0.5, 2.0] {
            assert_eq!(delta_lx(&s, &p, SidedPoint::plus(0.6), &[xi]).unwrap(), vec![0.0]);
        }
    }

    #[test]
    fn q_and_m() {
        let (s, p) = ex53();
        let at0 = SidedPoint::plus(0.0);
        assert_eq!(q_form(&s, &p, at0, 0.5, &[1.0], 1).unwrap(), 3.0);
        assert_eq!(q_form(&s, &p, at0, 0.0, &[1.0], 2).unwrap(), 0.0);
        for i in 1..=3 {
            assert_eq!(q_form(&s, &p, at0, 0.3, &[0.0], i).unwrap(), 0.0);
        }
        assert!(q_form(&s, &p, at0, 1.0, &[1.0], 1).is_err());
        let (s, p) = ex54();
        assert_eq!(m_form(&s, &p, SidedPoint::plus(0.5), 0.5, &[1.0, 1.0], 1).unwrap(), 1.0);
        let (s, p) = ex51();
        assert_eq!(m_form(&s, &p, SidedPoint::plus(0.5), 0.7, &[1.3], 2).unwrap(), 0.0);
    }

    #[test]
    fn w_g_k_hand_values() {
        let (s, p) = ex53();
        close(w_form(&s, &p, SidedPoint::plus(0.5), 0.5, &[1.0], None).unwrap(), -2.5, 1e-5);
        close(w_form(&s, &p, SidedPoint::plus(0.5), 0.5, &[0.0], None).unwrap(), 0.0, 1e-12);
        close(k_form(&s, &p, SidedPoint::plus(0.5), 1.0 / 3.0, &[1.0], None).unwrap(), -10.0, 1e-5);
        close(k_form(&s, &p, SidedPoint::minus(1.0), 0.0, &[1.0], None).unwrap(), -7.0, 1e-5);
        let (s, p) = ex51();
        close(w_form(&s, &p, SidedPoint::plus(0.2), 0.4, &[1.7], None).unwrap(), 0.0, 1e-12);
        close(g_form(&s, &p, SidedPoint::plus(0.4), 0.5, &[2.0], None).unwrap(), -6.0, 1e-9);
        close(g_form(&s, &p, SidedPoint::plus(0.4), 0.5, &[0.5], None).unwrap(), 3.0 / 32.0, 1e-9);
        close(g_form(&s, &p, SidedPoint::plus(0.4), 0.5, &[0.0], None).unwrap(), 0.0, 1e-12);
        close(interval_second_order(&s, &p, SidedPoint::two_sided(0.5), 0.5, &[2.0], None).unwrap(), -24.0, 1e-9);
    }
}
