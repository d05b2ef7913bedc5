//! Weierstrass excess, Legendre form and the auxiliary functionals along x = t.

use varicheck::engine::{excess, g_form, k_form, legendre_form, q_form, w_form};
use varicheck::problem::{load_problem_file, SidedPoint};

fn main() -> varicheck::Result<()> {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex5_3.toml");
    let (spec, path) = load_problem_file(file)?;

    println!("{:>5} {:>6} {:>12} {:>12} {:>12}", "t", "xi", "E", "(1-t)xi^2(xi+3)", "xi'Lvv xi");
    for t in [0.0, 0.25, 0.5, 0.75] {
        for xi in [-2.0, 1.0] {
            let p = SidedPoint::plus(t);
            let e = excess(&spec, &path, p, &[xi])?;
            let leg = legendre_form(&spec, &path, p, &[xi])?;
            println!("{t:>5} {xi:>6} {e:>12.6} {:>12.6} {leg:>12.6}", (1.0 - t) * xi * xi * (xi + 3.0));
        }
    }

    let p = SidedPoint::plus(0.5);
    println!("Q1 = {}", q_form(&spec, &path, p, 0.5, &[1.0], 1)?);
    println!("W  = {}", w_form(&spec, &path, p, 0.5, &[1.0], None)?);
    println!("G  = {}", g_form(&spec, &path, p, 0.5, &[1.0], None)?);
    println!("K(eps=1/3) = {}", k_form(&spec, &path, p, 1.0 / 3.0, &[1.0], None)?);
    Ok(())
}
