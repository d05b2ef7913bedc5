//! Hypothesis gating and verdicts for the pointwise theorems (3.1–3.7) and the
//! interval theorems (4.1–4.3).

use super::forms::{
    cubic_form, excess, g_form, interval_second_order, k_bracket, k_parts, legendre_form, m_form, w_form, zeta,
};
use super::report::{ConditionReport, Evidence, Mode, Relation, Sample, TestedValue, Tolerances, Verdict};
use super::scan::{norm, ScanConfig};
use crate::error::{Error, Result};
use crate::problem::{PiecewisePath, ProblemSpec, Side, SidedPoint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest admissible `lambda_bar`; values above are capped.
pub const LAMBDA_CAP: f64 = 1.0 - 1e-6;

/// Default number of interior mesh points for interval theorems.
pub const DEFAULT_GRID_T: usize = 50;

/// Theorem families. Each has a strong-minimum and a weak-minimum form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// 3.1 / 3.4: the Weierstrass condition degenerates at a point.
    Weierstrass,
    /// 3.2 / 3.5: in addition the condition of 3.1 degenerates.
    SecondOrder,
    /// 3.3 / 3.6 / 3.7: the Legendre condition degenerates.
    Legendre,
    /// 4.1: the Weierstrass condition degenerates on an interval.
    IntervalWeierstrass,
    /// 4.2: second-order condition on an interval.
    IntervalSecondOrder,
    /// 4.3: Weierstrass and Legendre degenerate on an interval.
    IntervalLegendre,
}

impl Family {
    pub fn is_interval(self) -> bool {
        matches!(self, Family::IntervalWeierstrass | Family::IntervalSecondOrder | Family::IntervalLegendre)
    }

    fn uses_lambda(self, part: Part) -> bool {
        let _ = part;
        !matches!(self, Family::Legendre | Family::IntervalLegendre)
    }
}

/// Theorem part: (i)/(j), (ii)/(jj), (iii).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    I,
    II,
    III,
}

/// A theorem as named on the command line, e.g. `3.1(ii)`, `3.7(j)` or `4.2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremRef {
    pub family: Family,
    pub mode: Mode,
    /// `None` means: infer from the side of the query point.
    pub part: Option<Part>,
}

impl TheoremRef {
    pub fn new(family: Family, mode: Mode, part: Option<Part>) -> Self {
        TheoremRef { family, mode, part }
    }

    /// The part that applies at a point with the given side.
    pub fn resolve_part(&self, side: Side) -> Part {
        if let Some(p) = self.part {
            return p;
        }
        match (self.family, side) {
            (f, _) if f.is_interval() => Part::I,
            (Family::Legendre, Side::TwoSided) => Part::III,
            (Family::Legendre, _) => Part::II,
            (_, Side::TwoSided) => Part::II,
            _ => Part::I,
        }
    }

    /// Printed label, e.g. `3.3(ii)` or `3.7(j)`.
    pub fn label(&self, part: Part) -> String {
        let roman = |p: Part| match p {
            Part::I => "i",
            Part::II => "ii",
            Part::III => "iii",
        };
        let weak = |p: Part| match p {
            Part::I => "j",
            _ => "jj",
        };
        match (self.family, self.mode) {
            (Family::Weierstrass, Mode::Strong) => format!("3.1({})", roman(part)),
            (Family::SecondOrder, Mode::Strong) => format!("3.2({})", roman(part)),
            (Family::Legendre, Mode::Strong) => format!("3.3({})", roman(part)),
            (Family::Weierstrass, Mode::Weak) => format!("3.4({})", weak(part)),
            (Family::SecondOrder, Mode::Weak) => format!("3.5({})", weak(part)),
            (Family::Legendre, Mode::Weak) if part == Part::I => "3.6".into(),
            (Family::Legendre, Mode::Weak) => format!("3.7({})", if part == Part::II { "j" } else { "jj" }),
            (Family::IntervalWeierstrass, m) => format!("4.1{}", if m == Mode::Weak { "(ii)" } else { "" }),
            (Family::IntervalSecondOrder, m) => format!("4.2{}", if m == Mode::Weak { "(ii)" } else { "" }),
            (Family::IntervalLegendre, m) => format!("4.3{}", if m == Mode::Weak { "(ii)" } else { "" }),
        }
    }
}

impl FromStr for TheoremRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, part) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(Error::Query(format!("malformed theorem id `{s}`"))),
            None => (s, None),
        };
        let roman = |p: Option<&str>| -> Result<Option<Part>> {
            Ok(match p {
                None => None,
                Some("i") => Some(Part::I),
                Some("ii") => Some(Part::II),
                Some("iii") => Some(Part::III),
                Some(o) => return Err(Error::Query(format!("unknown part `({o})` in `{s}`"))),
            })
        };
        let weak = |p: Option<&str>| -> Result<Option<Part>> {
            Ok(match p {
                None => None,
                Some("j") => Some(Part::I),
                Some("jj") => Some(Part::II),
                Some(o) => return Err(Error::Query(format!("unknown part `({o})` in `{s}`"))),
            })
        };
        let strong_or_weak = |p: Option<&str>| -> Result<Mode> {
            match p {
                None | Some("i") => Ok(Mode::Strong),
                Some("ii") => Ok(Mode::Weak),
                Some(o) => Err(Error::Query(format!("unknown part `({o})` in `{s}`"))),
            }
        };
        let t = match num {
            "3.1" => TheoremRef::new(Family::Weierstrass, Mode::Strong, roman(part)?),
            "3.2" => TheoremRef::new(Family::SecondOrder, Mode::Strong, roman(part)?),
            "3.3" => TheoremRef::new(Family::Legendre, Mode::Strong, roman(part)?),
            "3.4" => TheoremRef::new(Family::Weierstrass, Mode::Weak, weak(part)?),
            "3.5" => TheoremRef::new(Family::SecondOrder, Mode::Weak, weak(part)?),
            "3.6" if part.is_none() => TheoremRef::new(Family::Legendre, Mode::Weak, Some(Part::I)),
            "3.7" => {
                let p = match part {
                    None => None,
                    Some("j") => Some(Part::II),
                    Some("jj") => Some(Part::III),
                    Some(o) => return Err(Error::Query(format!("unknown part `({o})` in `{s}`"))),
                };
                TheoremRef::new(Family::Legendre, Mode::Weak, p)
            }
            "4.1" => TheoremRef::new(Family::IntervalWeierstrass, strong_or_weak(part)?, None),
            "4.2" => TheoremRef::new(Family::IntervalSecondOrder, strong_or_weak(part)?, None),
            "4.3" => TheoremRef::new(Family::IntervalLegendre, strong_or_weak(part)?, None),
            _ => return Err(Error::Query(format!("unknown theorem `{s}`"))),
        };
        Ok(t)
    }
}

impl fmt::Display for TheoremRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Some(p) => f.write_str(&self.label(p)),
            None => f.write_str(self.label(Part::I).split('(').next().unwrap()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Point(SidedPoint),
    Interval(f64, f64),
}

/// A direction `eta`, optionally `lambda_bar`, and where to test them.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationQuery {
    pub eta: Vec<f64>,
    pub lambda_bar: Option<f64>,
    pub target: Target,
    pub tol: Tolerances,
}

/// What a theorem part asks for at a point with a given side.
#[derive(Clone, Copy, Debug)]
struct Shape {
    hypothesis: &'static str,
    condition: &'static str,
    relation: Relation,
    /// Conclusion involves finite differences.
    differential: bool,
}

fn shape(family: Family, part: Part, side: Side) -> Shape {
    let plus = side != Side::Minus;
    let s = |hypothesis, condition, relation, differential| Shape { hypothesis, condition, relation, differential };
    use Relation::*;
    match (family, part) {
        (Family::Weierstrass, Part::I) if plus => s("(3.1)", "(3.3)", NonNegative, true),
        (Family::Weierstrass, Part::I) => s("(3.2)", "(3.4)", NonPositive, true),
        (Family::Weierstrass, _) => s("(3.5)", "(3.6)", Zero, false),
        (Family::SecondOrder, Part::I) if plus => s("(3.1),(3.10)", "(3.12)", NonNegative, true),
        (Family::SecondOrder, Part::I) => s("(3.2),(3.11)", "(3.13)", NonNegative, true),
        (Family::SecondOrder, _) => s("(3.5)", "(3.14)", NonNegative, true),
        (Family::Legendre, Part::I) => s("(3.15)", "(3.16)", Zero, false),
        (Family::Legendre, Part::II) if plus => s("(3.17)", "(3.19)", NonNegative, true),
        (Family::Legendre, Part::II) => s("(3.18)", "(3.20)", NonPositive, true),
        (Family::Legendre, Part::III) => s("(3.21)", "(3.22)", Zero, false),
        (Family::IntervalWeierstrass, _) => s("(4.1)", "(4.2)", Zero, false),
        (Family::IntervalSecondOrder, _) => s("(4.1)", "(4.10)", NonNegative, true),
        (Family::IntervalLegendre, _) => s("(4.13)", "(4.14)", Zero, false),
    }
}

fn side_tag(side: Side) -> &'static str {
    match side {
        Side::Plus => "+",
        Side::Minus => "-",
        Side::TwoSided => "",
    }
}

/// Hypothesis values at one point. `None` in the conclusion means gating failed.
struct Outcome {
    evidence: Vec<Evidence>,
    value: Option<f64>,
}

fn ev(quantity: String, value: f64, tolerance: f64) -> Evidence {
    Evidence { holds: value.abs() <= tolerance, quantity, value, tolerance }
}

fn all_hold(e: &[Evidence]) -> bool {
    e.iter().all(|x| x.holds)
}

/// Evaluate a theorem part at one point: hypotheses first, conclusion only if
/// they all hold.
#[allow(clippy::too_many_arguments)]
fn point_outcome(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    family: Family,
    part: Part,
    p: SidedPoint,
    eta: &[f64],
    lambda: Option<f64>,
    tol: &Tolerances,
) -> Result<Outcome> {
    let tag = side_tag(p.side);
    let step = tol.fd_step;
    let lam = || lambda.ok_or_else(|| Error::Query("this theorem needs lambda_bar".into()));
    let mut evidence = Vec::new();
    let pair = |evidence: &mut Vec<Evidence>, l: f64| -> Result<()> {
        evidence.push(ev(format!("E(t{tag}, eta)"), excess(spec, path, p, eta)?, tol.zero_tol));
        evidence.push(ev(format!("E(t{tag}, zeta)"), excess(spec, path, p, &zeta(l, eta))?, tol.zero_tol));
        Ok(())
    };
    let with_legendre = |evidence: &mut Vec<Evidence>| -> Result<()> {
        evidence.push(ev(format!("E(t{tag}, eta)"), excess(spec, path, p, eta)?, tol.zero_tol));
        evidence.push(ev(format!("eta'Lvv(t{tag})eta"), legendre_form(spec, path, p, eta)?, tol.zero_tol));
        Ok(())
    };
    let value = match (family, part) {
        (Family::Weierstrass, Part::I) => {
            let l = lam()?;
            pair(&mut evidence, l)?;
            if all_hold(&evidence) {
                Some(w_form(spec, path, p, l, eta, step)?)
            } else {
                None
            }
        }
        (Family::Weierstrass, _) | (Family::IntervalWeierstrass, _) => {
            let l = lam()?;
            pair(&mut evidence, l)?;
            if all_hold(&evidence) {
                Some(m_form(spec, path, p, l, eta, 1)?)
            } else {
                None
            }
        }
        (Family::SecondOrder, Part::I) => {
            let l = lam()?;
            pair(&mut evidence, l)?;
            if all_hold(&evidence) {
                let w = w_form(spec, path, p, l, eta, step)?;
                evidence.push(ev(format!("W(t{tag})"), w, tol.derivative_tol));
            }
            if all_hold(&evidence) {
                Some(g_form(spec, path, p, l, eta, step)?)
            } else {
                None
            }
        }
        (Family::SecondOrder, _) => {
            let l = lam()?;
            pair(&mut evidence, l)?;
            if all_hold(&evidence) {
                Some(g_form(spec, path, p, l, eta, step)?)
            } else {
                None
            }
        }
        (Family::Legendre, Part::I) => {
            evidence.push(ev(format!("eta'Lvv(t{tag})eta"), legendre_form(spec, path, p, eta)?, tol.zero_tol));
            if all_hold(&evidence) {
                Some(cubic_form(spec, path, p, eta)?)
            } else {
                None
            }
        }
        (Family::Legendre, Part::II) => {
            with_legendre(&mut evidence)?;
            if all_hold(&evidence) {
                let (bracket, de, dleg) = k_parts(spec, path, p, eta, step)?;
                Some(bracket + de + 0.5 * dleg)
            } else {
                None
            }
        }
        (Family::Legendre, Part::III) | (Family::IntervalLegendre, _) => {
            with_legendre(&mut evidence)?;
            if all_hold(&evidence) {
                Some(k_bracket(spec, path, p, eta)?)
            } else {
                None
            }
        }
        (Family::IntervalSecondOrder, _) => {
            let l = lam()?;
            pair(&mut evidence, l)?;
            if all_hold(&evidence) {
                Some(interval_second_order(spec, path, p, l, eta, step)?)
            } else {
                None
            }
        }
    };
    Ok(Outcome { evidence, value })
}

fn conclusion_tol(sh: &Shape, tol: &Tolerances) -> f64 {
    if sh.differential {
        tol.derivative_tol
    } else {
        tol.zero_tol
    }
}

fn validate_eta(spec: &ProblemSpec, eta: &[f64]) -> Result<()> {
    if eta.len() != spec.n {
        return Err(Error::Query(format!("eta has length {}, expected {}", eta.len(), spec.n)));
    }
    if eta.iter().all(|x| *x == 0.0) {
        return Err(Error::Query("eta must be nonzero".into()));
    }
    Ok(())
}

fn validate_lambda(lambda: Option<f64>, needed: bool) -> Result<Option<f64>> {
    match lambda {
        None if needed => Err(Error::Query("this theorem needs lambda_bar in (0, 1)".into())),
        Some(l) if !(l > 0.0 && l < 1.0) => Err(Error::Query(format!("lambda_bar must lie in (0, 1), got {l}"))),
        Some(l) => Ok(Some(l.min(LAMBDA_CAP))),
        None => Ok(None),
    }
}

fn validate_point(path: &PiecewisePath, family: Family, part: Part, p: SidedPoint) -> Result<()> {
    path.check_side(p)?;
    let one_sided = match (family, part) {
        (Family::Legendre, Part::I) => return Ok(()),
        (Family::Legendre, Part::II) => true,
        (Family::Legendre, Part::III) => false,
        (_, Part::I) => true,
        _ => false,
    };
    if one_sided && p.side == Side::TwoSided {
        return Err(Error::Side("this part is one-sided; choose + or -".into()));
    }
    if !one_sided {
        if p.side != Side::TwoSided {
            return Err(Error::Side("this part is two-sided; use side 0".into()));
        }
        if !(path.t0() < p.t && p.t < path.t1()) {
            return Err(Error::Side(format!("this part needs an interior point, got t={}", p.t)));
        }
    }
    Ok(())
}

/// Interior mesh of `(a, b)`, rejecting intervals that contain a corner.
pub fn interval_mesh(path: &PiecewisePath, a: f64, b: f64, grid_t: usize) -> Result<Vec<SidedPoint>> {
    if !(path.t0() <= a && a < b && b <= path.t1()) {
        return Err(Error::Query(format!("interval ({a}, {b}) must lie inside [{}, {}]", path.t0(), path.t1())));
    }
    if let Some(c) = path.angular_points().iter().find(|&&c| a < c && c < b) {
        return Err(Error::Query(format!("interval ({a}, {b}) contains the angular point {c}")));
    }
    if grid_t == 0 {
        return Err(Error::Query("interval mesh needs at least one point".into()));
    }
    Ok((1..=grid_t)
        .map(|k| SidedPoint::two_sided(a + (b - a) * k as f64 / (grid_t + 1) as f64))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn finish(
    th: &TheoremRef,
    part: Part,
    sh: Shape,
    verdict: Verdict,
    tested: f64,
    evidence: Vec<Evidence>,
    samples: Vec<Sample>,
    witness: Option<Sample>,
    tol: Tolerances,
) -> ConditionReport {
    ConditionReport {
        theorem: th.label(part),
        condition: sh.condition.to_string(),
        relation: sh.relation,
        mode: th.mode,
        verdict,
        conclusion: ConditionReport::conclusion_text(verdict, th.mode),
        tested_value: TestedValue::Scalar(tested),
        evidence,
        samples,
        witness,
        tolerances: tol,
    }
}

fn worst_of(samples: &[Sample], rel: Relation) -> Option<&Sample> {
    samples.iter().fold(None, |best: Option<&Sample>, s| match best {
        Some(b) if rel.badness(b.value) >= rel.badness(s.value) => Some(b),
        _ => Some(s),
    })
}

/// Strong form at a single point: 3.1, 3.2 or 3.3.
pub fn check_point_strong(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    q: &DegenerationQuery,
    th: TheoremRef,
) -> Result<ConditionReport> {
    let Target::Point(p) = q.target else {
        return Err(Error::Query(format!("theorem {th} is pointwise; give a point, not an interval")));
    };
    if th.family.is_interval() {
        return Err(Error::Query(format!("theorem {th} is an interval theorem")));
    }
    let part = th.resolve_part(p.side);
    validate_point(path, th.family, part, p)?;
    validate_eta(spec, &q.eta)?;
    let lambda = validate_lambda(q.lambda_bar, th.family.uses_lambda(part))?;
    let sh = shape(th.family, part, p.side);
    let out = point_outcome(spec, path, th.family, part, p, &q.eta, lambda, &q.tol)?;
    let Some(value) = out.value else {
        let worst = out.evidence.iter().filter(|e| !e.holds).map(|e| e.value).next().unwrap_or(0.0);
        return Ok(finish(&th, part, sh, Verdict::NotApplicable, worst, out.evidence, vec![], None, q.tol));
    };
    let sample = Sample { t: p.t, side: p.side, eta: q.eta.clone(), lambda_bar: lambda, value };
    let ok = sh.relation.holds(value, conclusion_tol(&sh, &q.tol));
    let verdict = if ok { Verdict::Satisfied } else { Verdict::Violated };
    let witness = (!ok).then(|| sample.clone());
    Ok(finish(&th, part, sh, verdict, value, out.evidence, vec![sample], witness, q.tol))
}

/// Weak form at a single point: 3.4–3.7, scanned over the ball of directions.
pub fn check_point_weak(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    q: &DegenerationQuery,
    th: TheoremRef,
    scan: &ScanConfig,
) -> Result<ConditionReport> {
    let Target::Point(p) = q.target else {
        return Err(Error::Query(format!("theorem {th} is pointwise; give a point, not an interval")));
    };
    if th.family.is_interval() {
        return Err(Error::Query(format!("theorem {th} is an interval theorem")));
    }
    scan.validate()?;
    let part = th.resolve_part(p.side);
    validate_point(path, th.family, part, p)?;
    let tol = Tolerances { zero_tol: scan.zero_tol, ..q.tol };
    let sh = shape(th.family, part, p.side);
    let candidates = candidates(spec.n, th.family.uses_lambda(part), scan);
    let results: Vec<(Outcome, &Candidate)> = candidates
        .par_iter()
        .map(|c| Ok((point_outcome(spec, path, th.family, part, p, &c.0, c.1, &tol)?, c)))
        .collect::<Result<_>>()?;
    let mut samples = Vec::new();
    let mut closest = f64::INFINITY;
    for (out, (eta, l)) in &results {
        match out.value {
            Some(value) => samples.push(Sample { t: p.t, side: p.side, eta: eta.clone(), lambda_bar: *l, value }),
            None => closest = closest.min(residual(&out.evidence)),
        }
    }
    weak_verdict(&th, part, sh, samples, closest, results.len(), tol)
}

/// A direction and, when the theorem uses one, a lambda_bar.
type Candidate = (Vec<f64>, Option<f64>);

fn candidates(n: usize, with_lambda: bool, scan: &ScanConfig) -> Vec<Candidate> {
    if with_lambda {
        scan.pairs(n).into_iter().map(|(e, l)| (e, Some(l))).collect()
    } else {
        scan.directions(n).into_iter().map(|e| (e, None)).collect()
    }
}

/// Largest hypothesis violation relative to its tolerance, as an absolute value.
fn residual(e: &[Evidence]) -> f64 {
    e.iter().filter(|x| !x.holds).map(|x| x.value.abs()).fold(0.0, f64::max)
}

fn weak_verdict(
    th: &TheoremRef,
    part: Part,
    sh: Shape,
    samples: Vec<Sample>,
    closest: f64,
    total: usize,
    tol: Tolerances,
) -> Result<ConditionReport> {
    if total == 0 {
        return Err(Error::Query("scan grid is empty".into()));
    }
    if samples.is_empty() {
        let evidence = vec![Evidence {
            quantity: format!("smallest {} residual over {total} grid samples", sh.hypothesis),
            value: closest,
            tolerance: tol.zero_tol,
            holds: false,
        }];
        return Ok(finish(th, part, sh, Verdict::NotApplicable, closest, evidence, vec![], None, tol));
    }
    let evidence = vec![Evidence {
        quantity: format!("grid samples satisfying {} (of {total})", sh.hypothesis),
        value: samples.len() as f64,
        tolerance: tol.zero_tol,
        holds: true,
    }];
    let ctol = conclusion_tol(&sh, &tol);
    let worst = worst_of(&samples, sh.relation).unwrap().clone();
    let ok = sh.relation.holds(worst.value, ctol);
    let verdict = if ok { Verdict::Satisfied } else { Verdict::Violated };
    Ok(finish(th, part, sh, verdict, worst.value, evidence, samples, (!ok).then_some(worst), tol))
}

/// Interval theorems 4.1–4.3, in strong form for the query direction or in
/// weak form over the ball of directions.
pub fn check_interval(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    q: &DegenerationQuery,
    th: TheoremRef,
    scan: &ScanConfig,
    grid_t: usize,
) -> Result<ConditionReport> {
    let Target::Interval(a, b) = q.target else {
        return Err(Error::Query(format!("theorem {th} needs an interval")));
    };
    if !th.family.is_interval() {
        return Err(Error::Query(format!("theorem {th} is pointwise")));
    }
    let mesh = interval_mesh(path, a, b, grid_t)?;
    let part = Part::I;
    let sh = shape(th.family, part, Side::TwoSided);
    let with_lambda = th.family != Family::IntervalLegendre;
    match th.mode {
        Mode::Strong => {
            validate_eta(spec, &q.eta)?;
            let lambda = validate_lambda(q.lambda_bar, with_lambda)?;
            let (evidence, samples) = on_mesh(spec, path, th.family, &mesh, &q.eta, lambda, &q.tol)?;
            let Some(samples) = samples else {
                let worst = residual(&evidence);
                return Ok(finish(&th, part, sh, Verdict::NotApplicable, worst, evidence, vec![], None, q.tol));
            };
            let worst = worst_of(&samples, sh.relation).unwrap().clone();
            let ok = sh.relation.holds(worst.value, conclusion_tol(&sh, &q.tol));
            let verdict = if ok { Verdict::Satisfied } else { Verdict::Violated };
            Ok(finish(&th, part, sh, verdict, worst.value, evidence, samples, (!ok).then_some(worst), q.tol))
        }
        Mode::Weak => {
            scan.validate()?;
            let tol = Tolerances { zero_tol: scan.zero_tol, ..q.tol };
            let cands = candidates(spec.n, with_lambda, scan);
            let results: Vec<(Vec<Evidence>, Option<Vec<Sample>>)> = cands
                .par_iter()
                .map(|(eta, l)| on_mesh(spec, path, th.family, &mesh, eta, *l, &tol))
                .collect::<Result<_>>()?;
            let mut samples = Vec::new();
            let mut closest = f64::INFINITY;
            for (evidence, s) in results.iter() {
                match s {
                    Some(s) => samples.push(worst_of(s, sh.relation).unwrap().clone()),
                    None => closest = closest.min(residual(evidence)),
                }
            }
            weak_verdict(&th, part, sh, samples, closest, cands.len(), tol)
        }
    }
}

/// Hypotheses maximised over the mesh; conclusion samples if they all hold.
fn on_mesh(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    family: Family,
    mesh: &[SidedPoint],
    eta: &[f64],
    lambda: Option<f64>,
    tol: &Tolerances,
) -> Result<(Vec<Evidence>, Option<Vec<Sample>>)> {
    let mut outcomes = Vec::with_capacity(mesh.len());
    let mut evidence: Vec<Evidence> = Vec::new();
    for &p in mesh {
        let out = point_outcome(spec, path, family, Part::I, p, eta, lambda, tol)?;
        if evidence.is_empty() {
            evidence = out.evidence.iter().map(|e| Evidence { quantity: format!("max over mesh |{}|", e.quantity), value: 0.0, ..e.clone() }).collect();
        }
        for (acc, e) in evidence.iter_mut().zip(&out.evidence) {
            if e.value.abs() > acc.value.abs() {
                acc.value = e.value;
            }
            acc.holds &= e.holds;
        }
        outcomes.push((p, out.value));
    }
    if !all_hold(&evidence) {
        return Ok((evidence, None));
    }
    let samples = outcomes
        .into_iter()
        .map(|(p, v)| Sample { t: p.t, side: p.side, eta: eta.to_vec(), lambda_bar: lambda, value: v.unwrap() })
        .collect();
    Ok((evidence, Some(samples)))
}

/// Any theorem, dispatched on its family and mode.
pub fn check(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    q: &DegenerationQuery,
    th: TheoremRef,
    scan: &ScanConfig,
    grid_t: usize,
) -> Result<ConditionReport> {
    match (th.family.is_interval(), th.mode) {
        (true, _) => check_interval(spec, path, q, th, scan, grid_t),
        (false, Mode::Strong) => check_point_strong(spec, path, q, th),
        (false, Mode::Weak) => check_point_weak(spec, path, q, th, scan),
    }
}

/// Recompute the conclusion value at a reported sample.
pub fn evaluate_sample(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    th: TheoremRef,
    sample: &Sample,
    tol: &Tolerances,
) -> Result<Option<f64>> {
    let p = SidedPoint { t: sample.t, side: sample.side };
    let part = if th.family.is_interval() { Part::I } else { th.resolve_part(p.side) };
    Ok(point_outcome(spec, path, th.family, part, p, &sample.eta, sample.lambda_bar, tol)?.value)
}

/// Whether every eta sample lies in the ball of radius `delta` (helper for callers
/// assembling their own scans).
pub fn in_ball(eta: &[f64], delta: f64) -> bool {
    norm(eta) <= delta * (1.0 + 1e-12)
}
