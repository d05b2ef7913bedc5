//! Build needle variations, integrate the increment, and check the expansions.

use varicheck::oracle::{
    build_variation, increment, verify_proposition, LambdaMode, OracleTolerances, Proposition, VariationParams,
};
use varicheck::problem::{load_problem_file, Side, SidedPoint};

fn main() -> varicheck::Result<()> {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex5_3.toml");
    let (spec, path) = load_problem_file(file)?;

    let vp = VariationParams { theta: 0.5, lambda: LambdaMode::Fixed(0.5), xi: vec![1.0], side: Side::Plus, epsilon: 0.1 };
    let varied = build_variation(&path, &vp)?;
    println!("angular points of the varied path: {:?}", varied.angular_points());
    println!("x at 0.55: {:?}", varied.eval(SidedPoint::two_sided(0.525), 0)?);
    for eps in [0.1, 0.05, 0.025] {
        let d = increment(&spec, &path, &vp.with_epsilon(eps), 1e-14)?;
        println!("eps={eps:<6} dJ={d:.12} dJ/eps={:.8}", d / eps);
    }

    let tol = OracleTolerances::default();
    for (prop, lambda) in [
        (Proposition::P21, LambdaMode::Fixed(0.5)),
        (Proposition::P22, LambdaMode::Fixed(0.5)),
        (Proposition::P23, LambdaMode::EqualsEpsilon),
    ] {
        for side in [Side::Plus, Side::Minus] {
            let t = VariationParams { theta: 0.5, lambda, xi: vec![1.0], side, epsilon: 0.0 };
            let r = verify_proposition(&spec, &path, &t, prop, None, &tol)?;
            let cells: Vec<String> =
                r.checks.iter().map(|c| format!("{}: {:.6} vs {:.6}", c.term, c.predicted, c.fitted)).collect();
            println!("{prop} {side:?} pass={} [{}]", r.pass, cells.join("; "));
        }
    }
    Ok(())
}
