//! Text and JSON rendering of analysis results, and the exit-code contract.

use crate::engine::{ConditionReport, Degeneration, ScanConfig, Target, TestedValue, Verdict};
use crate::error::Result;
use crate::oracle::PropositionReport;
use crate::problem::{erdmann_gaps, euler_residual, functional_value, CornerGaps, PiecewisePath, ProblemSpec, RightEnd, SidedPoint};
use serde::Serialize;
use std::fmt::Write as _;

/// Bumped whenever a field of the JSON output changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Euler equation and corner conditions along the candidate path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub mesh_points: usize,
    /// Largest `|d/dt L_v - L_x|` over the mesh.
    pub max_euler_residual: f64,
    pub worst_t: f64,
    pub corners: Vec<CornerGaps>,
    /// `L_v(t1-)` when the right end is free; it must vanish.
    pub transversality: Option<Vec<f64>>,
    pub tolerance: f64,
    pub extremal: bool,
    /// `J` along the path.
    pub functional_value: f64,
}

/// Residuals on `points_per_segment` evenly spaced points of each segment,
/// ends included on their own side, plus the gaps at every angular point.
pub fn classical_report(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    points_per_segment: usize,
    tol: f64,
    quad_tol: f64,
) -> Result<ClassicalReport> {
    let m = points_per_segment.max(2);
    let mut worst = (0.0f64, path.t0());
    let mut count = 0;
    for seg in path.segments() {
        for k in 0..m {
            let t = seg.from + seg.len() * k as f64 / (m - 1) as f64;
            let p = if k == m - 1 { SidedPoint::minus(seg.to) } else { SidedPoint::plus(t) };
            let r = euler_residual(spec, path, p)?.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            if r > worst.0 {
                worst = (r, p.t);
            }
            count += 1;
        }
    }
    let corners: Vec<CornerGaps> =
        path.angular_points().iter().map(|&c| erdmann_gaps(spec, path, c)).collect::<Result<_>>()?;
    let transversality = match spec.right_end {
        RightEnd::Free => {
            let (x, v) = path.state(SidedPoint::minus(spec.t1))?;
            Some(spec.integrand.lv.iter().map(|e| e.eval(spec.t1, &x, &v)).collect::<Result<Vec<f64>>>()?)
        }
        RightEnd::Fixed(_) => None,
    };
    let small = |v: &[f64]| v.iter().all(|x| x.abs() <= tol);
    let extremal = worst.0 <= tol
        && corners.iter().all(|c| small(&c.momentum))
        && transversality.as_deref().is_none_or(small);
    Ok(ClassicalReport {
        mesh_points: count,
        max_euler_residual: worst.0,
        worst_t: worst.1,
        corners,
        transversality,
        tolerance: tol,
        extremal,
        functional_value: functional_value(spec, path, quad_tol)?,
    })
}

/// Directions found by [`crate::engine::scan_degenerations`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub target: Target,
    pub config: ScanConfig,
    pub degenerations: Vec<Degeneration>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    Classical(ClassicalReport),
    Condition(ConditionReport),
    Scan(ScanReport),
    Oracle(PropositionReport),
}

/// Everything one command produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub schema_version: u32,
    pub problem: String,
    pub reports: Vec<ReportItem>,
}

impl Document {
    pub fn new(problem: impl Into<String>, reports: Vec<ReportItem>) -> Document {
        Document { schema_version: SCHEMA_VERSION, problem: problem.into(), reports }
    }

    /// 2 if anything failed, 3 if every theorem check was not applicable, else 0.
    pub fn exit_code(&self) -> i32 {
        let failed = self.reports.iter().any(|r| match r {
            ReportItem::Classical(c) => !c.extremal,
            ReportItem::Condition(c) => c.verdict == Verdict::Violated,
            ReportItem::Oracle(o) => !o.pass,
            ReportItem::Scan(_) => false,
        });
        if failed {
            return 2;
        }
        let conditions: Vec<&ConditionReport> = self
            .reports
            .iter()
            .filter_map(|r| if let ReportItem::Condition(c) = r { Some(c) } else { None })
            .collect();
        if !conditions.is_empty()
            && conditions.len() == self.reports.len()
            && conditions.iter().all(|c| c.verdict == Verdict::NotApplicable)
        {
            return 3;
        }
        0
    }
}

pub fn render_report(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(doc),
    }
}

/// Short decimal for reports: up to ten places, trailing zeros trimmed.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if (1e-4..1e7).contains(&a) {
        let s = format!("{v:.10}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.to_string() }
    } else {
        let s = format!("{v:.6e}");
        let (m, e) = s.split_once('e').unwrap();
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{e}")
    }
}

fn vec_num(v: &[f64]) -> String {
    format!("({})", v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", "))
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut String, indent: &str, rows: &[Vec<String>]) {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let mut line = String::from(indent);
        for (c, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < r.len() {
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem: {}", doc.problem);
    for item in &doc.reports {
        out.push('\n');
        match item {
            ReportItem::Classical(c) => classical_text(&mut out, c),
            ReportItem::Condition(c) => condition_text(&mut out, c),
            ReportItem::Scan(s) => scan_text(&mut out, s),
            ReportItem::Oracle(o) => oracle_text(&mut out, o),
        }
    }
    out
}

fn classical_text(out: &mut String, c: &ClassicalReport) {
    let _ = writeln!(out, "Classical conditions");
    let mut rows = vec![vec!["check".into(), "value".into(), "tol".into(), "ok".into()]];
    let ok = |b: bool| if b { "yes" } else { "no" }.to_string();
    rows.push(vec![
        format!("Euler residual, max over {} points (t={})", c.mesh_points, num(c.worst_t)),
        num(c.max_euler_residual),
        num(c.tolerance),
        ok(c.max_euler_residual <= c.tolerance),
    ]);
    let small = |v: &[f64]| v.iter().all(|x| x.abs() <= c.tolerance);
    for g in &c.corners {
        rows.push(vec![format!("[L_v] at t={}", num(g.tau)), vec_num(&g.momentum), num(c.tolerance), ok(small(&g.momentum))]);
        rows.push(vec![format!("[L - v.L_v] at t={}", num(g.tau)), num(g.energy), "-".into(), "-".into()]);
        rows.push(vec![format!("[L_x] at t={}", num(g.tau)), vec_num(&g.lx), "-".into(), "-".into()]);
    }
    if let Some(tv) = &c.transversality {
        rows.push(vec!["L_v(t1-) (free right end)".into(), vec_num(tv), num(c.tolerance), ok(small(tv))]);
    }
    table(out, "  ", &rows);
    let _ = writeln!(out, "  J = {}", num(c.functional_value));
    let _ = writeln!(out, "  result: {}", if c.extremal { "extremal" } else { "not an extremal" });
}

fn sample_text(s: &crate::engine::Sample) -> String {
    let mut r = format!("t={}{} eta={}", num(s.t), side_suffix(s.side), vec_num(&s.eta));
    if let Some(l) = s.lambda_bar {
        let _ = write!(r, " lambda_bar={}", num(l));
    }
    let _ = write!(r, " value={}", num(s.value));
    r
}

fn side_suffix(side: crate::problem::Side) -> &'static str {
    match side {
        crate::problem::Side::Plus => "+",
        crate::problem::Side::Minus => "-",
        crate::problem::Side::TwoSided => "",
    }
}

fn condition_text(out: &mut String, c: &ConditionReport) {
    let mode = match c.mode {
        crate::engine::Mode::Strong => "strong",
        crate::engine::Mode::Weak => "weak",
    };
    let _ = writeln!(out, "Theorem {} ({mode} minimum): {} {}", c.theorem, c.condition, c.relation);
    let value = match &c.tested_value {
        TestedValue::Scalar(v) => num(*v),
        TestedValue::Vector(v) => vec_num(v),
    };
    match c.verdict {
        Verdict::Violated => {
            let _ = writeln!(out, "  Violated: {} = {value}  => {}", c.condition, c.conclusion);
        }
        Verdict::Satisfied => {
            let _ = writeln!(out, "  Satisfied: {} = {value}  => {}", c.condition, c.conclusion);
        }
        Verdict::NotApplicable => {
            let _ = writeln!(out, "  NotApplicable  => {}", c.conclusion);
        }
    }
    let mut rows = vec![vec!["hypothesis".into(), "value".into(), "tol".into(), "holds".into()]];
    for e in &c.evidence {
        rows.push(vec![e.quantity.clone(), num(e.value), num(e.tolerance), if e.holds { "yes" } else { "NO" }.into()]);
    }
    table(out, "  ", &rows);
    if let Some(w) = &c.witness {
        let _ = writeln!(out, "  witness: {}", sample_text(w));
    }
    let _ = writeln!(out, "  samples: {}", c.samples.len());
}

fn scan_text(out: &mut String, s: &ScanReport) {
    let target = match s.target {
        Target::Point(p) => format!("t={}{}", num(p.t), side_suffix(p.side)),
        Target::Interval(a, b) => format!("({}, {})", num(a), num(b)),
    };
    let _ = writeln!(
        out,
        "Degeneration scan at {target}: delta={} grid={} lambda_grid={} zero_tol={}",
        num(s.config.delta),
        s.config.grid,
        s.config.lambda_grid,
        num(s.config.zero_tol)
    );
    if s.degenerations.is_empty() {
        let _ = writeln!(out, "  no degenerate directions found");
        return;
    }
    let mut rows = vec![vec!["kind".into(), "eta".into(), "lambda_bar".into(), "|E(eta)|".into(), "companion".into()]];
    for d in &s.degenerations {
        rows.push(vec![
            match d.kind {
                crate::engine::DegenerationKind::Weierstrass => "(4.1)-type: E(eta)=E(zeta)=0".into(),
                crate::engine::DegenerationKind::WeierstrassLegendre => "(4.13)-type: E(eta)=eta'Lvv eta=0".into(),
            },
            vec_num(&d.eta),
            d.lambda_bar.map_or("-".into(), num),
            num(d.excess),
            num(d.companion),
        ]);
    }
    table(out, "  ", &rows);
}

fn oracle_text(out: &mut String, o: &PropositionReport) {
    let v = &o.variation;
    let lambda = match v.lambda {
        crate::oracle::LambdaMode::Fixed(l) => num(l),
        crate::oracle::LambdaMode::EqualsEpsilon => "epsilon".into(),
    };
    let _ = writeln!(
        out,
        "Proposition {} at theta={}{} lambda={lambda} xi={}",
        o.proposition,
        num(v.theta),
        side_suffix(v.side),
        vec_num(&v.xi)
    );
    let mut rows = vec![vec![
        "power".into(),
        "term".into(),
        "predicted".into(),
        "fitted".into(),
        "deviation".into(),
        "tol".into(),
        "pass".into(),
    ]];
    for c in &o.checks {
        rows.push(vec![
            format!("eps^{}", c.power),
            c.term.clone(),
            num(c.predicted),
            num(c.fitted),
            if c.relative { format!("{} rel", num(c.rel_dev)) } else { num(c.abs_dev) },
            num(c.tolerance),
            if c.pass { "yes" } else { "NO" }.into(),
        ]);
    }
    table(out, "  ", &rows);
    let _ = writeln!(
        out,
        "  fit: {} epsilons in [{}, {}], powers {:?}, condition {}, residual {}",
        o.fit.epsilons.len(),
        num(*o.fit.epsilons.last().unwrap()),
        num(o.fit.epsilons[0]),
        o.fit.powers,
        num(o.fit.condition),
        num(o.fit.residual)
    );
    let _ = writeln!(out, "  result: {}", if o.pass { "expansion confirmed" } else { "expansion NOT confirmed" });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::fixture;

    #[test]
    fn numbers() {
        assert_eq!(num(-24.0), "-24");
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1e-12), "1e-12");
        assert_eq!(num(-2.5e-9), "-2.5e-9");
        assert_eq!(num(-23.99999999999), "-24");
    }

    #[test]
    fn classical_ex53() {
        let (s, p) = fixture("(1-t)*v1^3 - 3*x1", 1, "[1]", &["t"]);
        let c = classical_report(&s, &p, 100, 1e-9, 1e-12).unwrap();
        assert!(c.extremal);
        assert_eq!(c.mesh_points, 100);
        assert!((c.functional_value + 1.0).abs() < 1e-12);
        let (s, p) = fixture("v1^2 + x1^2", 1, "[1]", &["t"]);
        assert!(!classical_report(&s, &p, 10, 1e-9, 1e-12).unwrap().extremal);
    }

    #[test]
    fn table_alignment() {
        let mut s = String::new();
        table(&mut s, "", &[vec!["a".into(), "b".into()], vec!["long".into(), "c".into()]]);
        assert_eq!(s, "a     b\nlong  c\n");
    }
}
