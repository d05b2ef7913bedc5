//! Euler residual, corner conditions and functional value for a broken extremal.

use varicheck::problem::{erdmann_gaps, euler_residual, functional_value, load_problem_file, SidedPoint};
use varicheck::report::classical_report;

fn main() -> varicheck::Result<()> {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tent.toml");
    let (spec, path) = load_problem_file(file)?;

    for t in [0.1, 0.5, 0.9] {
        let side = if t == 0.5 { SidedPoint::minus(t) } else { SidedPoint::two_sided(t) };
        println!("Euler residual at t={t}: {:?}", euler_residual(&spec, &path, side)?);
    }
    let gaps = erdmann_gaps(&spec, &path, 0.5)?;
    println!("jumps at the corner: [L_v]={:?} [L - v.L_v]={} [L_x]={:?}", gaps.momentum, gaps.energy, gaps.lx);
    println!("J = {}", functional_value(&spec, &path, 1e-12)?);

    let r = classical_report(&spec, &path, 50, 1e-9, 1e-12)?;
    println!("extremal: {} (max residual {:e} over {} points)", r.extremal, r.max_euler_residual, r.mesh_points);
    Ok(())
}
