use crate::error::{Error, Result};
use crate::expr::{add, mul, sub, Expr, Var};
use crate::problem::{PiecewisePath, ProblemSpec, Segment, Side, SidedPoint};
use crate::quad::integrate;
use serde::{Deserialize, Serialize};

/// How the split point of the needle is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaMode {
    /// A fixed `lambda` in `[0, 1)`.
    Fixed(f64),
    /// `lambda = epsilon`, which needs `epsilon < 1`.
    EqualsEpsilon,
}

/// A needle at `theta` on one side, with slope `xi` on the first piece of
/// length `lambda * epsilon` and slope `lambda / (lambda - 1) * xi` on the rest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationParams {
    pub theta: f64,
    pub lambda: LambdaMode,
    pub xi: Vec<f64>,
    pub side: Side,
    pub epsilon: f64,
}

/// One linear piece of the bump: `h(t) = slope * (t - anchor)` on `[from, to]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpPiece {
    pub from: f64,
    pub to: f64,
    pub anchor: f64,
    pub slope: Vec<f64>,
}

impl BumpPiece {
    pub fn h(&self, t: f64) -> Vec<f64> {
        self.slope.iter().map(|s| s * (t - self.anchor)).collect()
    }
}

impl VariationParams {
    pub fn with_epsilon(&self, epsilon: f64) -> VariationParams {
        VariationParams { epsilon, ..self.clone() }
    }

    pub fn lambda_value(&self) -> f64 {
        match self.lambda {
            LambdaMode::Fixed(l) => l,
            LambdaMode::EqualsEpsilon => self.epsilon,
        }
    }

    /// Checks shared by every epsilon: side, theta inside the path, lambda range.
    pub fn validate_template(&self, path: &PiecewisePath) -> Result<()> {
        if self.xi.len() != path.n {
            return Err(Error::Geometry(format!("xi has length {}, expected {}", self.xi.len(), path.n)));
        }
        if let LambdaMode::Fixed(l) = self.lambda {
            if !(0.0..1.0).contains(&l) {
                return Err(Error::Geometry(format!("lambda must lie in [0, 1), got {l}")));
            }
        }
        match self.side {
            Side::Plus if self.theta >= path.t1() => {
                Err(Error::Geometry(format!("a right needle needs theta < {}", path.t1())))
            }
            Side::Minus if self.theta <= path.t0() => {
                Err(Error::Geometry(format!("a left needle needs theta > {}", path.t0())))
            }
            Side::TwoSided => Err(Error::Geometry("a needle is introduced on the right (+) or left (-)".into())),
            _ if !(path.t0() <= self.theta && self.theta <= path.t1()) => {
                Err(Error::Geometry(format!("theta={} lies outside the path", self.theta)))
            }
            _ => Ok(()),
        }
    }

    /// Room between `theta` and the end of its smooth piece on the chosen side.
    pub fn room(&self, path: &PiecewisePath) -> Result<f64> {
        self.validate_template(path)?;
        let seg = path.segment_at(SidedPoint { t: self.theta, side: self.side })?;
        Ok(match self.side {
            Side::Plus => seg.to - self.theta,
            _ => self.theta - seg.from,
        })
    }

    /// The nonempty pieces of the bump, in increasing `t`.
    pub fn pieces(&self, path: &PiecewisePath) -> Result<Vec<BumpPiece>> {
        let room = self.room(path)?;
        let eps = self.epsilon;
        if !(eps > 0.0) || eps > room {
            return Err(Error::Geometry(format!(
                "epsilon={eps} must lie in (0, {room}] so the needle stays inside one smooth piece"
            )));
        }
        if self.lambda == LambdaMode::EqualsEpsilon && eps >= 1.0 {
            return Err(Error::Geometry(format!("lambda = epsilon needs epsilon < 1, got {eps}")));
        }
        let l = self.lambda_value();
        let first = self.xi.clone();
        let second: Vec<f64> = self.xi.iter().map(|x| l / (l - 1.0) * x).collect();
        let th = self.theta;
        let mut out = match self.side {
            Side::Plus => {
                let (mid, end) = (th + l * eps, th + eps);
                vec![
                    BumpPiece { from: th, to: mid, anchor: th, slope: first },
                    BumpPiece { from: mid, to: end, anchor: end, slope: second },
                ]
            }
            _ => {
                let (mid, start) = (th - l * eps, th - eps);
                vec![
                    BumpPiece { from: start, to: mid, anchor: start, slope: second },
                    BumpPiece { from: mid, to: th, anchor: th, slope: first },
                ]
            }
        };
        out.retain(|p| p.to > p.from);
        Ok(out)
    }
}

/// The varied path `x + h`. Segments away from the needle are reused as they
/// are, and the needle's breakpoints are declared angular.
pub fn build_variation(path: &PiecewisePath, vp: &VariationParams) -> Result<PiecewisePath> {
    let pieces = vp.pieces(path)?;
    let idx = path.segment_index(SidedPoint { t: vp.theta, side: vp.side })?;
    let seg = &path.segments()[idx];
    let lo = pieces[0].from;
    let hi = pieces[pieces.len() - 1].to;
    let mut segments: Vec<Segment> = path.segments()[..idx].to_vec();
    if seg.from < lo {
        segments.push(Segment::new(seg.from, lo, seg.components().to_vec())?);
    }
    for p in &pieces {
        let x = seg
            .components()
            .iter()
            .zip(&p.slope)
            .map(|(e, s)| add(e.clone(), mul(Expr::c(*s), sub(Expr::var(Var::T), Expr::c(p.anchor)))))
            .collect();
        segments.push(Segment::new(p.from, p.to, x)?);
    }
    if hi < seg.to {
        segments.push(Segment::new(hi, seg.to, seg.components().to_vec())?);
    }
    segments.extend_from_slice(&path.segments()[idx + 1..]);
    let mut angular = path.angular_points().to_vec();
    for p in &pieces {
        for t in [p.from, p.to] {
            if path.t0() < t && t < path.t1() {
                angular.push(t);
            }
        }
    }
    PiecewisePath::new(segments, angular)
}

/// `J(x + h) - J(x)`, integrating the pointwise difference over the needle only.
pub fn increment(spec: &ProblemSpec, path: &PiecewisePath, vp: &VariationParams, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Query(format!("quadrature tolerance must be positive, got {tol}")));
    }
    let pieces = vp.pieces(path)?;
    let seg = path.segment_at(SidedPoint { t: vp.theta, side: vp.side })?;
    let l = &spec.integrand.l;
    let mut total = 0.0;
    for p in &pieces {
        let f = |t: f64| -> Result<f64> {
            let x = seg.eval(t, 0)?;
            let v = seg.eval(t, 1)?;
            let xv: Vec<f64> = x.iter().zip(p.h(t)).map(|(a, b)| a + b).collect();
            let vv: Vec<f64> = v.iter().zip(&p.slope).map(|(a, b)| a + b).collect();
            Ok(l.eval(t, &xv, &vv)? - l.eval(t, &x, &v)?)
        };
        total += integrate(f, p.from, p.to, tol * (p.to - p.from) / vp.epsilon)?;
    }
    Ok(total)
}
