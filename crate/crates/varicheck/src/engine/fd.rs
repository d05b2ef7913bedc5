//! Time derivatives of scalar fields along a path by finite differences with
//! two rounds of Richardson extrapolation.

use crate::error::{Error, Result};
use crate::problem::{PiecewisePath, Side, SidedPoint};

/// Default step as a fraction of the segment length.
pub const DEFAULT_REL_STEP: f64 = 1e-4;

#[derive(Clone, Copy, PartialEq, Debug)]
enum Stencil {
    Forward,
    Backward,
    Central,
}

/// `d^order/dt^order f` at `p`, with `xi`-type arguments held fixed inside `f`.
///
/// The sampling mesh has width `4*step` and stays inside the segment that
/// supplies the requested side. Plus uses forward differences, Minus backward
/// ones; a two-sided point uses central differences when the mesh fits.
pub fn time_derivative<F>(path: &PiecewisePath, f: F, p: SidedPoint, order: u32, step: Option<f64>) -> Result<f64>
where
    F: Fn(SidedPoint) -> Result<f64>,
{
    if !(order == 1 || order == 2) {
        return Err(Error::Query(format!("time derivative order must be 1 or 2, got {order}")));
    }
    path.check_side(p)?;
    let seg = path.segment_at(p)?;
    let step = step.unwrap_or(DEFAULT_REL_STEP * seg.len());
    if !(step > 0.0) {
        return Err(Error::Query(format!("finite-difference step must be positive, got {step}")));
    }
    let width = 4.0 * step;
    let fits_right = p.t + width <= seg.to;
    let fits_left = p.t - width >= seg.from;
    let fits_centre = p.t + 0.5 * width <= seg.to && p.t - 0.5 * width >= seg.from;
    let stencil = match p.side {
        Side::Plus if fits_right => Stencil::Forward,
        Side::Minus if fits_left => Stencil::Backward,
        Side::TwoSided if fits_centre => Stencil::Central,
        Side::TwoSided if fits_right => Stencil::Forward,
        Side::TwoSided if fits_left => Stencil::Backward,
        _ => {
            return Err(Error::Mesh(format!(
                "width {width:e} around t={} leaves segment [{}, {}]",
                p.t, seg.from, seg.to
            )))
        }
    };
    // Points to the right of t are read as left limits and vice versa, so
    // that every sample comes from this segment even at its ends.
    let sample = |s: f64| -> Result<f64> {
        let q = if s > p.t {
            SidedPoint::minus(s)
        } else if s < p.t {
            SidedPoint::plus(s)
        } else {
            p
        };
        let v = f(q)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Mesh(format!("non-finite sample at t={s}")))
        }
    };
    let f0 = sample(p.t)?;
    let raw = |h: f64| -> Result<f64> {
        match (stencil, order) {
            (Stencil::Central, 1) => Ok((sample(p.t + h)? - sample(p.t - h)?) / (2.0 * h)),
            (Stencil::Central, _) => Ok((sample(p.t + h)? - 2.0 * f0 + sample(p.t - h)?) / (h * h)),
            (_, 1) => {
                let s = if stencil == Stencil::Forward { 1.0 } else { -1.0 };
                let f1 = sample(p.t + s * h)?;
                let f2 = sample(p.t + 2.0 * s * h)?;
                Ok(s * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h))
            }
            _ => {
                let s = if stencil == Stencil::Forward { 1.0 } else { -1.0 };
                let f1 = sample(p.t + s * h)?;
                let f2 = sample(p.t + 2.0 * s * h)?;
                let f3 = sample(p.t + 3.0 * s * h)?;
                Ok((2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h))
            }
        }
    };
    // base spacing chosen so the widest stencil spans exactly `width`
    let h = match (stencil, order) {
        (Stencil::Central, _) => 0.5 * width,
        (_, 1) => 0.5 * width,
        _ => width / 3.0,
    };
    let d = [raw(h)?, raw(0.5 * h)?, raw(0.25 * h)?];
    // error terms: h^2, h^4 for central; h^2, h^3 for one-sided
    let (k1, k2) = if stencil == Stencil::Central { (4.0, 16.0) } else { (4.0, 8.0) };
    let r1 = (k1 * d[1] - d[0]) / (k1 - 1.0);
    let r2 = (k1 * d[2] - d[1]) / (k1 - 1.0);
    Ok((k2 * r2 - r1) / (k2 - 1.0))
}
