use crate::error::{Error, Result};
use crate::expr::{Expr, Var};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const CONTINUITY_TOL: f64 = 1e-10;
pub const SMOOTHNESS_TOL: f64 = 1e-8;

/// Which one-sided limit a quantity is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
    #[serde(rename = "two-sided")]
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
            Side::TwoSided => "±",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SidedPoint {
    pub t: f64,
    pub side: Side,
}

impl SidedPoint {
    pub fn plus(t: f64) -> Self {
        SidedPoint { t, side: Side::Plus }
    }
    pub fn minus(t: f64) -> Self {
        SidedPoint { t, side: Side::Minus }
    }
    pub fn two_sided(t: f64) -> Self {
        SidedPoint { t, side: Side::TwoSided }
    }
}

impl fmt::Display for SidedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::TwoSided => write!(f, "{}", self.t),
            s => write!(f, "{}{}", self.t, s),
        }
    }
}

/// One smooth piece of a path, with derivatives up to order 3 cached.
#[derive(Clone, Debug)]
pub struct Segment {
    pub from: f64,
    pub to: f64,
    /// `derivs[k][i]` is the k-th time derivative of component i.
    derivs: Vec<Vec<Expr>>,
}

impl Segment {
    pub fn new(from: f64, to: f64, x: Vec<Expr>) -> Result<Segment> {
        if !(from < to) {
            return Err(Error::Schema(format!("segment [{from}, {to}] is empty or reversed")));
        }
        for e in &x {
            let (nx, nv) = e.dims();
            if nx + nv > 0 {
                return Err(Error::Schema(format!("path expression `{e}` may only depend on t")));
            }
        }
        let mut derivs = vec![x];
        for k in 0..3 {
            let next = derivs[k].iter().map(|e| e.differentiate(Var::T)).collect();
            derivs.push(next);
        }
        Ok(Segment { from, to, derivs })
    }

    pub fn components(&self) -> &[Expr] {
        &self.derivs[0]
    }

    pub fn len(&self) -> f64 {
        self.to - self.from
    }

    pub fn eval(&self, t: f64, order: usize) -> Result<Vec<f64>> {
        let row = self
            .derivs
            .get(order)
            .ok_or_else(|| Error::Query(format!("path derivative order {order} > 3")))?;
        row.iter().map(|e| e.eval(t, &[], &[])).collect()
    }
}

/// A continuous, piecewise-smooth candidate path with declared corners.
#[derive(Clone, Debug)]
pub struct PiecewisePath {
    pub n: usize,
    segments: Vec<Segment>,
    angular: Vec<f64>,
}

impl PiecewisePath {
    /// Build and validate. Consecutive segments must share endpoints, values must
    /// agree at every breakpoint and slopes must agree at undeclared breakpoints.
    pub fn new(segments: Vec<Segment>, mut angular: Vec<f64>) -> Result<PiecewisePath> {
        let first = segments.first().ok_or_else(|| Error::Schema("path has no segments".into()))?;
        let n = first.components().len();
        if n == 0 {
            return Err(Error::Schema("path has no components".into()));
        }
        for s in &segments {
            if s.components().len() != n {
                return Err(Error::Schema(format!(
                    "segment [{}, {}] has {} components, expected {n}",
                    s.from,
                    s.to,
                    s.components().len()
                )));
            }
        }
        for w in segments.windows(2) {
            if w[0].to != w[1].from {
                return Err(Error::Schema(format!("segments leave a gap between {} and {}", w[0].to, w[1].from)));
            }
        }
        angular.sort_by(f64::total_cmp);
        angular.dedup();
        for &a in &angular {
            if !segments[..segments.len() - 1].iter().any(|s| s.to == a) {
                return Err(Error::Schema(format!("angular point {a} is not an interior breakpoint")));
            }
        }
        for w in segments.windows(2) {
            let at = w[0].to;
            let gap = max_gap(&w[0].eval(at, 0)?, &w[1].eval(at, 0)?);
            if gap > CONTINUITY_TOL {
                return Err(Error::Continuity { at, gap });
            }
            if !angular.contains(&at) {
                let gap = max_gap(&w[0].eval(at, 1)?, &w[1].eval(at, 1)?);
                if gap > SMOOTHNESS_TOL {
                    return Err(Error::UndeclaredCorner { at, gap });
                }
            }
        }
        Ok(PiecewisePath { n, segments, angular })
    }

    /// A single smooth segment over `[t0, t1]`.
    pub fn smooth(t0: f64, t1: f64, x: Vec<Expr>) -> Result<PiecewisePath> {
        PiecewisePath::new(vec![Segment::new(t0, t1, x)?], vec![])
    }

    pub fn t0(&self) -> f64 {
        self.segments[0].from
    }

    pub fn t1(&self) -> f64 {
        self.segments[self.segments.len() - 1].to
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn angular_points(&self) -> &[f64] {
        &self.angular
    }

    pub fn is_angular(&self, t: f64) -> bool {
        self.angular.contains(&t)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.segments.iter().map(|s| s.from).collect();
        b.push(self.t1());
        b
    }

    /// Index of the segment that supplies the requested one-sided limit.
    pub fn segment_index(&self, p: SidedPoint) -> Result<usize> {
        let (t0, t1) = (self.t0(), self.t1());
        if !(t0..=t1).contains(&p.t) {
            return Err(Error::Side(format!("t={} lies outside [{t0}, {t1}]", p.t)));
        }
        match p.side {
            Side::Plus if p.t == t1 => Err(Error::Side(format!("right-hand limit requested at the right end t={t1}"))),
            Side::Minus if p.t == t0 => Err(Error::Side(format!("left-hand limit requested at the left end t={t0}"))),
            Side::Minus => Ok(self.segments.iter().position(|s| s.from < p.t && p.t <= s.to).unwrap()),
            Side::Plus | Side::TwoSided => Ok(self
                .segments
                .iter()
                .position(|s| s.from <= p.t && p.t < s.to)
                .unwrap_or(self.segments.len() - 1)),
        }
    }

    pub fn segment_at(&self, p: SidedPoint) -> Result<&Segment> {
        Ok(&self.segments[self.segment_index(p)?])
    }

    /// Fail if `p` is two-sided at a corner and a one-sided quantity is wanted.
    pub fn check_side(&self, p: SidedPoint) -> Result<()> {
        if p.side == Side::TwoSided && self.is_angular(p.t) {
            return Err(Error::Side(format!("t={} is an angular point; choose + or -", p.t)));
        }
        self.segment_index(p).map(|_| ())
    }

    /// The `order`-th derivative of the path on the requested side.
    pub fn eval(&self, p: SidedPoint, order: usize) -> Result<Vec<f64>> {
        if order > 0 {
            self.check_side(p)?;
        }
        self.segment_at(p)?.eval(p.t, order)
    }

    /// `(x, ẋ)` on the requested side.
    pub fn state(&self, p: SidedPoint) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_side(p)?;
        let seg = self.segment_at(p)?;
        Ok((seg.eval(p.t, 0)?, seg.eval(p.t, 1)?))
    }
}

/// `path_eval` under its operation name.
pub fn path_eval(path: &PiecewisePath, p: SidedPoint, order: usize) -> Result<Vec<f64>> {
    path.eval(p, order)
}

pub(crate) fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
