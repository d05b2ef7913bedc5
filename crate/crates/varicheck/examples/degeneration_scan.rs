//! Find directions where the Weierstrass condition (and possibly Legendre's) holds with equality.

use varicheck::engine::{scan_degenerations, ScanConfig, Target};
use varicheck::problem::load_problem_file;

fn main() -> varicheck::Result<()> {
    let scan = ScanConfig { delta: 2.0, grid: 9, lambda_grid: 3, zero_tol: 1e-9 };
    for file in ["ex5_2.toml", "ex5_4.toml"] {
        let (spec, path) = load_problem_file(format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR")))?;
        let found = scan_degenerations(&spec, &path, Target::Interval(0.0, 1.0), &scan, 10)?;
        println!("{file}: {} degenerate samples", found.len());
        for d in found.iter().take(6) {
            println!("  {:?} eta={:?} lambda_bar={:?} companion={:e}", d.kind, d.eta, d.lambda_bar, d.companion);
        }
    }
    Ok(())
}
