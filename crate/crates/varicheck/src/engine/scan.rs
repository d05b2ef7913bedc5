//! Grids over the ball `B_delta(0)` and the discovery scan for degenerate directions.

use super::forms::{excess, legendre_form, zeta};
use super::theorems::{interval_mesh, Target};
use crate::error::{Error, Result};
use crate::problem::{PiecewisePath, ProblemSpec, SidedPoint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Radius of the ball of directions.
    pub delta: f64,
    /// Samples per dimension of the direction grid.
    pub grid: usize,
    /// Number of interior samples of `lambda_bar` in (0, 1).
    pub lambda_grid: usize,
    pub zero_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { delta: 1.0, grid: 21, lambda_grid: 21, zero_tol: 1e-9 }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.zero_tol > 0.0) || self.grid < 3 || self.lambda_grid == 0 {
            return Err(Error::Query(format!(
                "scan needs delta > 0, grid >= 3, lambda_grid >= 1, zero_tol > 0; got {self:?}"
            )));
        }
        Ok(())
    }

    /// `k / (lambda_grid + 1)` for `k = 1..=lambda_grid`.
    pub fn lambdas(&self) -> Vec<f64> {
        let m = self.lambda_grid;
        (1..=m).map(|k| k as f64 / (m + 1) as f64).collect()
    }

    /// Nonzero grid points of `[-delta, delta]^n` inside the closed ball, then
    /// their radial projections onto the sphere, without repeats.
    pub fn directions(&self, n: usize) -> Vec<Vec<f64>> {
        let g = self.grid;
        let axis: Vec<f64> = (0..g).map(|k| -self.delta + 2.0 * self.delta * k as f64 / (g - 1) as f64).collect();
        let mut cube = vec![vec![]];
        for _ in 0..n {
            cube = cube
                .into_iter()
                .flat_map(|p: Vec<f64>| {
                    axis.iter().map(move |a| {
                        let mut q = p.clone();
                        q.push(*a);
                        q
                    })
                })
                .collect();
        }
        let inside = |p: &Vec<f64>| norm(p) <= self.delta * (1.0 + 1e-12);
        let mut out: Vec<Vec<f64>> = cube.iter().filter(|p| norm(p) > 0.0 && inside(p)).cloned().collect();
        for p in &cube {
            let r = norm(p);
            if r > 0.0 {
                let q: Vec<f64> = p.iter().map(|x| x * self.delta / r).collect();
                if !out.iter().any(|o| o.iter().zip(&q).all(|(a, b)| (a - b).abs() <= 1e-12 * self.delta)) {
                    out.push(q);
                }
            }
        }
        out
    }

    /// `(eta, lambda_bar)` pairs with both `eta` and `zeta` in the ball.
    pub fn pairs(&self, n: usize) -> Vec<(Vec<f64>, f64)> {
        let lambdas = self.lambdas();
        let mut out = Vec::new();
        for eta in self.directions(n) {
            for &l in &lambdas {
                if norm(&zeta(l, &eta)) <= self.delta * (1.0 + 1e-12) {
                    out.push((eta.clone(), l));
                }
            }
        }
        out
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerationKind {
    /// `E(eta) = E(zeta) = 0`.
    Weierstrass,
    /// `E(eta) = eta' L_vv eta = 0`.
    WeierstrassLegendre,
}

/// A direction (and for the Weierstrass kind a `lambda_bar`) at which a
/// degeneration hypothesis holds within `zero_tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degeneration {
    pub kind: DegenerationKind,
    pub eta: Vec<f64>,
    pub lambda_bar: Option<f64>,
    /// `|E(eta)|`, maximised over the mesh for an interval.
    pub excess: f64,
    /// `|E(zeta)|` or `|eta' L_vv eta|`.
    pub companion: f64,
}

/// Grid search for directions where the Weierstrass (and Legendre) conditions
/// hold with equality. Values are reported as found; nothing is polished.
pub fn scan_degenerations(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    target: Target,
    scan: &ScanConfig,
    grid_t: usize,
) -> Result<Vec<Degeneration>> {
    scan.validate()?;
    let points: Vec<SidedPoint> = match target {
        Target::Point(p) => {
            path.check_side(p)?;
            vec![p]
        }
        Target::Interval(a, b) => interval_mesh(path, a, b, grid_t)?,
    };
    let worst = |f: &dyn Fn(SidedPoint) -> Result<f64>| -> Result<f64> {
        let mut m: f64 = 0.0;
        for &p in &points {
            m = m.max(f(p)?.abs());
        }
        Ok(m)
    };
    let lambdas = scan.lambdas();
    let found: Vec<Vec<Degeneration>> = scan
        .directions(spec.n)
        .into_par_iter()
        .map(|eta| -> Result<Vec<Degeneration>> {
            let mut out = Vec::new();
            let e = worst(&|p| excess(spec, path, p, &eta))?;
            if e > scan.zero_tol {
                return Ok(out);
            }
            let leg = worst(&|p| legendre_form(spec, path, p, &eta))?;
            if leg <= scan.zero_tol {
                out.push(Degeneration {
                    kind: DegenerationKind::WeierstrassLegendre,
                    eta: eta.clone(),
                    lambda_bar: None,
                    excess: e,
                    companion: leg,
                });
            }
            for &l in &lambdas {
                let z = zeta(l, &eta);
                let ez = worst(&|p| excess(spec, path, p, &z))?;
                if ez <= scan.zero_tol {
                    out.push(Degeneration {
                        kind: DegenerationKind::Weierstrass,
                        eta: eta.clone(),
                        lambda_bar: Some(l),
                        excess: e,
                        companion: ez,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

impl Degeneration {
    /// The query that tests this direction at `target`.
    pub fn query(&self, target: Target, tol: super::report::Tolerances) -> super::theorems::DegenerationQuery {
        super::theorems::DegenerationQuery { eta: self.eta.clone(), lambda_bar: self.lambda_bar, target, tol }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::fixture;

    fn has(found: &[Degeneration], kind: DegenerationKind, eta: &[f64], l: Option<f64>) -> bool {
        found.iter().any(|d| {
            d.kind == kind
                && d.eta.iter().zip(eta).all(|(a, b)| (a - b).abs() < 1e-12)
                && match (d.lambda_bar, l) {
                    (Some(a), Some(b)) => (a - b).abs() < 1e-12,
                    (a, b) => a.is_none() && b.is_none(),
                }
        })
    }

    #[test]
    fn grid_shapes() {
        let s = ScanConfig { delta: 2.0, grid: 5, lambda_grid: 3, zero_tol: 1e-9 };
        assert_eq!(s.lambdas(), vec![0.25, 0.5, 0.75]);
        let d = s.directions(1);
        assert_eq!(d.len(), 4);
        assert!(s.directions(2).iter().all(|e| norm(e) <= 2.0 + 1e-12));
        assert!(s.pairs(1).iter().all(|(e, l)| norm(&zeta(*l, e)) <= 2.0 + 1e-12));
        assert!(ScanConfig { grid: 2, ..s }.validate().is_err());
    }

    #[test]
    fn ex54_and_ex52() {
        let scan = ScanConfig { delta: 2.0, ..ScanConfig::default() };
        let (s, p) = fixture("(v1 - v2^3)^2 + x1*v2^2", 2, "[0,0]", &["0", "0"]);
        let found = scan_degenerations(&s, &p, Target::Interval(0.0, 1.0), &scan, 10).unwrap();
        assert!(has(&found, DegenerationKind::Weierstrass, &[1.0, 1.0], Some(0.5)));
        assert!(!has(&found, DegenerationKind::WeierstrassLegendre, &[1.0, 1.0], None));

        let (s, p) = fixture("(v1 - v2^2)^4 + x1*v2^2", 2, "[0,0]", &["0", "0"]);
        let found = scan_degenerations(&s, &p, Target::Interval(0.0, 1.0), &scan, 10).unwrap();
        assert!(has(&found, DegenerationKind::WeierstrassLegendre, &[1.0, 1.0], None));
        assert!(!found.iter().any(|d| d.kind == DegenerationKind::Weierstrass && d.eta == [1.0, 1.0]));
    }

    #[test]
    fn convex_has_none() {
        let (s, p) = fixture("v1^2", 1, "[1]", &["t"]);
        let found = scan_degenerations(&s, &p, Target::Point(SidedPoint::plus(0.3)), &ScanConfig::default(), 10).unwrap();
        assert!(found.is_empty());
    }
}
