use crate::problem::{load_problem, PiecewisePath, ProblemSpec};

/// A one-segment problem on [0, 1] starting at the origin.
pub(crate) fn fixture(l: &str, n: usize, x1: &str, path: &[&str]) -> (ProblemSpec, PiecewisePath) {
    let xs: Vec<String> = path.iter().map(|s| format!("\"{s}\"")).collect();
    let x0 = vec!["0"; n].join(",");
    let text = format!(
        "[problem]\nn={n}\nt0=0\nt1=1\nx0=[{x0}]\nx1={x1}\nlagrangian=\"{l}\"\n[[segment]]\nfrom=0\nto=1\nx=[{}]\n",
        xs.join(",")
    );
    load_problem(&text).unwrap()
}
