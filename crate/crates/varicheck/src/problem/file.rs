//! Problem files.
//!
//! ```toml
//! angular_points = [0.5]        # optional, interior breakpoints only
//!
//! [problem]
//! n = 1
//! t0 = 0.0
//! t1 = 1.0
//! x0 = [0.0]
//! x1 = [0.0]                    # or x1 = "free"
//! lagrangian = "(1 - v1^2)^2"
//!
//! [[segment]]
//! from = 0.0
//! to = 0.5
//! x = ["t"]
//!
//! [[segment]]
//! from = 0.5
//! to = 1.0
//! x = ["1 - t"]
//! ```
//!
//! Unknown keys anywhere are rejected.

use super::{PiecewisePath, ProblemSpec, RightEnd, Segment};
use crate::error::{Error, Result};
use crate::expr::{parse_expression, IntegrandBundle};
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    angular_points: Vec<f64>,
    problem: ProblemSection,
    segment: Vec<SegmentSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSection {
    n: usize,
    t0: f64,
    t1: f64,
    x0: Vec<f64>,
    x1: RightEndField,
    lagrangian: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RightEndField {
    Fixed(Vec<f64>),
    Word(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentSection {
    from: f64,
    to: f64,
    x: Vec<String>,
}

/// Parse and validate a problem document.
pub fn load_problem(text: &str) -> Result<(ProblemSpec, PiecewisePath)> {
    let doc: Document = toml::from_str(text).map_err(|e| Error::Schema(e.message().to_string()))?;
    let p = doc.problem;
    let right_end = match p.x1 {
        RightEndField::Fixed(v) => RightEnd::Fixed(v),
        RightEndField::Word(w) if w == "free" => RightEnd::Free,
        RightEndField::Word(w) => return Err(Error::Schema(format!("x1 must be a list or \"free\", got \"{w}\""))),
    };
    let integrand = IntegrandBundle::parse(&p.lagrangian, p.n)?;
    let spec = ProblemSpec::new(p.t0, p.t1, p.x0, right_end, integrand)?;
    let mut segments = Vec::with_capacity(doc.segment.len());
    for s in doc.segment {
        if s.x.len() != spec.n {
            return Err(Error::Schema(format!(
                "segment [{}, {}] has {} components, expected {}",
                s.from,
                s.to,
                s.x.len(),
                spec.n
            )));
        }
        let xs = s.x.iter().map(|e| parse_expression(e, 0)).collect::<Result<Vec<_>>>()?;
        segments.push(Segment::new(s.from, s.to, xs)?);
    }
    let path = PiecewisePath::new(segments, doc.angular_points)?;
    spec.check_admissible(&path)?;
    Ok((spec, path))
}

pub fn load_problem_file(path: impl AsRef<Path>) -> Result<(ProblemSpec, PiecewisePath)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_problem(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX53: &str = r#"
[problem]
n = 1
t0 = 0
t1 = 1
x0 = [0]
x1 = [1]
lagrangian = "(1-t)*v1^3 - 3*x1"

[[segment]]
from = 0
to = 1
x = ["t"]
"#;

    #[test]
    fn loads_fixture() {
        let (spec, path) = load_problem(EX53).unwrap();
        assert_eq!(spec.n, 1);
        assert_eq!(spec.right_end, RightEnd::Fixed(vec![1.0]));
        assert!(path.angular_points().is_empty());
    }

    #[test]
    fn free_right_end() {
        let text = EX53.replace("x1 = [1]", "x1 = \"free\"").replace("\"t\"", "\"t^2\"");
        let (spec, _) = load_problem(&text).unwrap();
        assert_eq!(spec.right_end, RightEnd::Free);
        assert!(load_problem(&text.replace("\"free\"", "\"loose\"")).is_err());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(load_problem(&EX53.replace("n = 1", "n = 1\nm = 2")), Err(Error::Schema(_))));
        assert!(matches!(load_problem(&EX53.replace("x = [\"t\"]", "x = [\"t\"]\ny = 1")), Err(Error::Schema(_))));
        assert!(matches!(load_problem(&EX53.replace("x1 = [1]", "x1 = [2]")), Err(Error::Boundary { .. })));
        let split = EX53.replace("to = 1\nx = [\"t\"]", "to = 0.5\nx = [\"t\"]\n\n[[segment]]\nfrom = 0.5\nto = 1\nx = [\"t + 0.1\"]");
        assert!(matches!(load_problem(&split), Err(Error::Continuity { .. })));
    }
}
