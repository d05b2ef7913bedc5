//! Problem data, candidate paths, the classical first-order checks and the
//! value of the functional.

mod classical;
mod file;
mod path;

pub use classical::{erdmann_gaps, euler_residual, functional_value, CornerGaps};
pub use file::{load_problem, load_problem_file};
pub use path::{path_eval, PiecewisePath, Segment, Side, SidedPoint, CONTINUITY_TOL, SMOOTHNESS_TOL};

use crate::error::{Error, Result};
use crate::expr::IntegrandBundle;

#[derive(Clone, Debug, PartialEq)]
pub enum RightEnd {
    Fixed(Vec<f64>),
    Free,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub n: usize,
    pub t0: f64,
    pub t1: f64,
    pub x0: Vec<f64>,
    pub right_end: RightEnd,
    pub integrand: IntegrandBundle,
}

impl ProblemSpec {
    pub fn new(t0: f64, t1: f64, x0: Vec<f64>, right_end: RightEnd, integrand: IntegrandBundle) -> Result<Self> {
        let n = integrand.n;
        if !(t0 < t1) {
            return Err(Error::Schema(format!("need t0 < t1, got [{t0}, {t1}]")));
        }
        if x0.len() != n {
            return Err(Error::Schema(format!("x0 has length {}, expected {n}", x0.len())));
        }
        if let RightEnd::Fixed(x1) = &right_end {
            if x1.len() != n {
                return Err(Error::Schema(format!("x1 has length {}, expected {n}", x1.len())));
            }
        }
        Ok(ProblemSpec { n, t0, t1, x0, right_end, integrand })
    }

    /// Check that `path` spans the interval and meets the boundary data.
    pub fn check_admissible(&self, path: &PiecewisePath) -> Result<()> {
        if path.n != self.n {
            return Err(Error::Schema(format!("path has {} components, problem has n = {}", path.n, self.n)));
        }
        if path.t0() != self.t0 || path.t1() != self.t1 {
            return Err(Error::Schema(format!(
                "path covers [{}, {}], problem interval is [{}, {}]",
                path.t0(),
                path.t1(),
                self.t0,
                self.t1
            )));
        }
        let gap = path::max_gap(&path.eval(SidedPoint::plus(self.t0), 0)?, &self.x0);
        if gap > CONTINUITY_TOL {
            return Err(Error::Boundary { at: self.t0, gap });
        }
        if let RightEnd::Fixed(x1) = &self.right_end {
            let gap = path::max_gap(&path.eval(SidedPoint::minus(self.t1), 0)?, x1);
            if gap > CONTINUITY_TOL {
                return Err(Error::Boundary { at: self.t1, gap });
            }
        }
        Ok(())
    }
}
