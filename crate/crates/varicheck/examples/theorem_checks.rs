//! Pointwise and interval theorem verdicts, strong and weak.

use varicheck::engine::{check, DegenerationQuery, ScanConfig, Target, TheoremRef, Tolerances, DEFAULT_GRID_T};
use varicheck::problem::{load_problem_file, SidedPoint};

fn run(file: &str, id: &str, eta: &[f64], lambda: Option<f64>, target: Target, scan: ScanConfig) -> varicheck::Result<()> {
    let (spec, path) = load_problem_file(format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR")))?;
    let th: TheoremRef = id.parse()?;
    let q = DegenerationQuery { eta: eta.to_vec(), lambda_bar: lambda, target, tol: Tolerances::default() };
    let r = check(&spec, &path, &q, th, &scan, DEFAULT_GRID_T)?;
    println!("{file:10} {:8} {:7} {:?} value={} -> {}", r.theorem, r.condition, r.verdict, r.tested_value, r.conclusion);
    if let Some(w) = &r.witness {
        println!("           witness t={} eta={:?} lambda_bar={:?}", w.t, w.eta, w.lambda_bar);
    }
    Ok(())
}

fn main() -> varicheck::Result<()> {
    let d = ScanConfig::default();
    run("ex5_1.toml", "4.2", &[2.0], Some(0.5), Target::Interval(0.0, 1.0), d)?;
    run("ex5_1.toml", "4.2(ii)", &[], None, Target::Interval(0.0, 1.0), d)?;
    run("ex5_2.toml", "4.3", &[1.0, 1.0], None, Target::Interval(0.0, 1.0), d)?;
    run("ex5_3.toml", "3.3", &[1.0], None, Target::Point(SidedPoint::minus(1.0)), d)?;
    run("ex5_3.toml", "3.7(j)", &[], None, Target::Point(SidedPoint::minus(1.0)), ScanConfig { delta: 6.0, ..d })?;
    run("ex5_4.toml", "3.1(ii)", &[1.0, 1.0], Some(0.5), Target::Point(SidedPoint::two_sided(0.5)), d)?;
    run("ex5_4.toml", "4.1", &[1.0, 1.0], Some(0.5), Target::Interval(0.0, 1.0), d)?;
    // Hypotheses fail here, so nothing is concluded.
    run("ex5_3.toml", "3.1", &[1.0], Some(0.5), Target::Point(SidedPoint::plus(0.2)), d)?;
    Ok(())
}
