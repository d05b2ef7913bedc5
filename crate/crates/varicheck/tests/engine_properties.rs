use proptest::prelude::*;
use varicheck::engine::{
    check, evaluate_sample, excess, m_form, q_form, DegenerationQuery, ScanConfig, Target, TheoremRef, Tolerances,
    Verdict,
};
use varicheck::problem::{load_problem_file, PiecewisePath, ProblemSpec, SidedPoint};

fn fixture(name: &str) -> (ProblemSpec, PiecewisePath) {
    load_problem_file(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

const SMOOTH: [&str; 4] = ["ex5_1.toml", "ex5_2.toml", "ex5_3.toml", "ex5_4.toml"];

fn query(eta: &[f64], lambda: Option<f64>, target: Target) -> DegenerationQuery {
    DegenerationQuery { eta: eta.to_vec(), lambda_bar: lambda, target, tol: Tolerances::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn excess_and_its_gradient_vanish_at_zero(k in 0..4usize, t in 0.01..0.99f64) {
        let (spec, path) = fixture(SMOOTH[k]);
        let p = SidedPoint::two_sided(t);
        let zero = vec![0.0; path.n];
        prop_assert!(excess(&spec, &path, p, &zero).unwrap().abs() <= 1e-12);
        let h = 1e-4;
        for i in 0..path.n {
            let mut up = zero.clone();
            let mut down = zero.clone();
            up[i] = h;
            down[i] = -h;
            let g = (excess(&spec, &path, p, &up).unwrap() - excess(&spec, &path, p, &down).unwrap()) / (2.0 * h);
            prop_assert!(g.abs() <= 1e-6, "dE/dxi_{i} = {g} at t = {t}");
        }
    }

    #[test]
    fn q_and_m_vanish_at_zero(k in 0..4usize, t in 0.01..0.99f64, lambda in 0.01..0.99f64, i in 1..4u32) {
        let (spec, path) = fixture(SMOOTH[k]);
        let p = SidedPoint::two_sided(t);
        let zero = vec![0.0; path.n];
        prop_assert!(q_form(&spec, &path, p, lambda, &zero, i).unwrap().abs() <= 1e-12);
        prop_assert!(m_form(&spec, &path, p, lambda, &zero, i).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn interval_condition_is_even_in_eta(eta in 0.1..3.0f64, lambda in 0.05..0.95f64) {
        let (spec, path) = fixture("ex5_1.toml");
        let th: TheoremRef = "4.2".parse().unwrap();
        let run = |e: f64| {
            check(&spec, &path, &query(&[e], Some(lambda), Target::Interval(0.0, 1.0)), th, &ScanConfig::default(), 20)
                .unwrap()
        };
        let (a, b) = (run(eta), run(-eta));
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.tested_value, b.tested_value);
    }

    #[test]
    fn verdict_is_not_applicable_exactly_when_a_hypothesis_fails(
        e1 in -1.5..1.5f64,
        e2 in -1.5..1.5f64,
        lambda in 0.1..0.9f64,
        t in 0.05..0.95f64,
    ) {
        let (spec, path) = fixture("ex5_4.toml");
        for id in ["3.1(ii)", "3.2(ii)", "3.3(iii)"] {
            let th: TheoremRef = id.parse().unwrap();
            let r = check(&spec, &path, &query(&[e1, e2], Some(lambda), Target::Point(SidedPoint::two_sided(t))), th,
                &ScanConfig::default(), 10).unwrap();
            let failed = r.evidence.iter().any(|e| !e.holds);
            prop_assert_eq!(r.verdict == Verdict::NotApplicable, failed, "{} {:?}", id, r.evidence);
        }
    }
}

#[test]
fn gating_flips_a_violation_to_not_applicable() {
    let (spec, path) = fixture("ex5_4.toml");
    let th: TheoremRef = "3.1(ii)".parse().unwrap();
    let p = Target::Point(SidedPoint::two_sided(0.5));
    let on = check(&spec, &path, &query(&[1.0, 1.0], Some(0.5), p), th, &ScanConfig::default(), 10).unwrap();
    assert_eq!(on.verdict, Verdict::Violated);
    // Off the degenerate direction the excess is positive.
    let off = check(&spec, &path, &query(&[1.0, 0.5], Some(0.5), p), th, &ScanConfig::default(), 10).unwrap();
    assert_eq!(off.verdict, Verdict::NotApplicable);
    assert!(off.evidence.iter().any(|e| !e.holds));
}

#[test]
fn witnesses_reproduce() {
    let cases = [
        ("ex5_1.toml", "4.2", vec![2.0], Some(0.5), Target::Interval(0.0, 1.0)),
        ("ex5_2.toml", "4.3", vec![1.0, 1.0], None, Target::Interval(0.0, 1.0)),
        ("ex5_4.toml", "4.1", vec![1.0, 1.0], Some(0.5), Target::Interval(0.2, 0.8)),
        ("ex5_2.toml", "3.7(jj)", vec![], None, Target::Point(SidedPoint::two_sided(0.5))),
    ];
    for (file, id, eta, lambda, target) in cases {
        let (spec, path) = fixture(file);
        let th: TheoremRef = id.parse().unwrap();
        let scan = ScanConfig { grid: 9, lambda_grid: 5, ..ScanConfig::default() };
        let r = check(&spec, &path, &query(&eta, lambda, target), th, &scan, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Violated, "{file} {id}");
        let w = r.witness.expect("violations carry a witness");
        let th: TheoremRef = r.theorem.parse().unwrap();
        let again = evaluate_sample(&spec, &path, th, &w, &r.tolerances).unwrap().unwrap();
        assert!((again - w.value).abs() <= 1e-12, "{file} {id}: {again} vs {}", w.value);
    }
}
