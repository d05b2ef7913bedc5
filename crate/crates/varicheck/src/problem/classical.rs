use super::{PiecewisePath, ProblemSpec, SidedPoint};
use crate::error::{Error, Result};
use crate::quad::integrate;
use serde::Serialize;

/// `d/dt L_v - L_x` along the path, the time derivative expanded by the chain rule.
pub fn euler_residual(spec: &ProblemSpec, path: &PiecewisePath, p: SidedPoint) -> Result<Vec<f64>> {
    path.check_side(p)?;
    let seg = path.segment_at(p)?;
    let x = seg.eval(p.t, 0)?;
    let v = seg.eval(p.t, 1)?;
    let a = seg.eval(p.t, 2)?;
    let b = &spec.integrand;
    let mut r = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let mut d = b.lvt[i].eval(p.t, &x, &v)?;
        for j in 0..spec.n {
            d += b.lvx[i][j].eval(p.t, &x, &v)? * v[j] + b.lvv[i][j].eval(p.t, &x, &v)? * a[j];
        }
        r.push(d - b.lx[i].eval(p.t, &x, &v)?);
    }
    Ok(r)
}

/// Jumps across a corner: `[L_v]`, `[L - v·L_v]`, and `[L_x]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornerGaps {
    pub tau: f64,
    pub momentum: Vec<f64>,
    pub energy: f64,
    pub lx: Vec<f64>,
}

pub fn erdmann_gaps(spec: &ProblemSpec, path: &PiecewisePath, tau: f64) -> Result<CornerGaps> {
    if !path.is_angular(tau) {
        return Err(Error::Query(format!("t={tau} is not a declared angular point")));
    }
    let b = &spec.integrand;
    let side = |p: SidedPoint| -> Result<(Vec<f64>, f64, Vec<f64>)> {
        let (x, v) = path.state(p)?;
        let lv: Vec<f64> = b.lv.iter().map(|e| e.eval(tau, &x, &v)).collect::<Result<_>>()?;
        let lx: Vec<f64> = b.lx.iter().map(|e| e.eval(tau, &x, &v)).collect::<Result<_>>()?;
        let l = b.l.eval(tau, &x, &v)?;
        let h = l - v.iter().zip(&lv).map(|(a, b)| a * b).sum::<f64>();
        Ok((lv, h, lx))
    };
    let (pm, hm, xm) = side(SidedPoint::minus(tau))?;
    let (pp, hp, xp) = side(SidedPoint::plus(tau))?;
    Ok(CornerGaps {
        tau,
        momentum: pp.iter().zip(&pm).map(|(a, b)| a - b).collect(),
        energy: hp - hm,
        lx: xp.iter().zip(&xm).map(|(a, b)| a - b).collect(),
    })
}

/// `J(path)` by adaptive quadrature, one segment at a time.
pub fn functional_value(spec: &ProblemSpec, path: &PiecewisePath, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Query(format!("quadrature tolerance must be positive, got {tol}")));
    }
    let width = path.t1() - path.t0();
    let mut total = 0.0;
    for seg in path.segments() {
        let l = &spec.integrand.l;
        let f = |t: f64| -> Result<f64> {
            let x = seg.eval(t, 0)?;
            let v = seg.eval(t, 1)?;
            l.eval(t, &x, &v)
        };
        total += integrate(f, seg.from, seg.to, tol * seg.len() / width)?;
    }
    Ok(total)
}
