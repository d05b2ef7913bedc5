#![allow(dead_code)]

use rand::Rng;
use varicheck::expr::parse_expression;
use varicheck::problem::{load_problem, load_problem_file, PiecewisePath, ProblemSpec};

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> (ProblemSpec, PiecewisePath) {
    load_problem_file(fixture_path(name)).unwrap()
}

/// Runs the command line in-process; returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("varicheck").chain(args.iter().copied());
    let code = varicheck::cli::run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// A random smooth scalar function of t, printed as an expression.
fn coefficient(rng: &mut impl Rng) -> String {
    let (a, b, c) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    format!("({a:.6} + {b:.6}*t + {c:.6}*sin({:.3}*t))", rng.gen_range(0.5..3.0))
}

pub struct Quadratic {
    pub spec: ProblemSpec,
    pub path: PiecewisePath,
    pub n: usize,
    /// Entries of A(t).
    pub a: Vec<Vec<String>>,
}

impl Quadratic {
    /// `eta' A(t) eta`
    pub fn a_form(&self, t: f64, eta: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.a.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let v = parse_expression(e, 1).unwrap().eval(t, &[0.0], &[0.0]).unwrap();
                s += eta[i] * v * eta[j];
            }
        }
        s
    }
}

/// `v'A(t)v + 2 v'B(t)x + x'C(t)x` with a free right end, along a random
/// quadratic path, n in 1..=3.
pub fn random_quadratic(rng: &mut impl Rng) -> Quadratic {
    let n = rng.gen_range(1..=3);
    let mut mats: Vec<Vec<Vec<String>>> =
        (0..3).map(|_| (0..n).map(|_| (0..n).map(|_| coefficient(rng)).collect()).collect()).collect();
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            terms.push(format!("v{i}*{}*v{j}", mats[0][i - 1][j - 1]));
            terms.push(format!("2*v{i}*{}*x{j}", mats[1][i - 1][j - 1]));
            terms.push(format!("x{i}*{}*x{j}", mats[2][i - 1][j - 1]));
        }
    }
    let path: Vec<String> = (0..n)
        .map(|_| format!("{:.4}*t + {:.4}*t^2", rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let toml = format!(
        "[problem]\nn = {n}\nt0 = 0\nt1 = 1\nx0 = {:?}\nx1 = \"free\"\nlagrangian = \"{}\"\n\n[[segment]]\nfrom = 0\nto = 1\nx = {:?}\n",
        vec![0.0; n],
        terms.join(" + "),
        path
    );
    let (spec, path) = load_problem(&toml).unwrap();
    Quadratic { spec, path, n, a: mats.swap_remove(0) }
}
