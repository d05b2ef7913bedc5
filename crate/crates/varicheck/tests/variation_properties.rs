use proptest::prelude::*;
use varicheck::oracle::{build_variation, increment, LambdaMode, VariationParams};
use varicheck::problem::{functional_value, load_problem_file, PiecewisePath, ProblemSpec, Side, SidedPoint};

fn fixture(name: &str) -> (ProblemSpec, PiecewisePath) {
    load_problem_file(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn params() -> impl Strategy<Value = (bool, VariationParams)> {
    (
        any::<bool>(),
        0.1..0.9f64,
        0.0..0.95f64,
        prop::collection::vec(-2.0..2.0f64, 2),
        prop_oneof![Just(Side::Plus), Just(Side::Minus)],
        0.001..0.09f64,
    )
        .prop_map(|(two_d, theta, lambda, xi, side, epsilon)| {
            let xi = if two_d { xi } else { xi[..1].to_vec() };
            (two_d, VariationParams { theta, lambda: LambdaMode::Fixed(lambda), xi, side, epsilon })
        })
}

fn sample(path: &PiecewisePath, t: f64, order: usize) -> Vec<f64> {
    let p = if t < path.t1() { SidedPoint::plus(t) } else { SidedPoint::minus(t) };
    path.eval(p, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn variation_is_admissible_with_exact_support((two_d, vp) in params()) {
        let (spec, path) = fixture(if two_d { "ex5_2.toml" } else { "ex5_3.toml" });
        let v = build_variation(&path, &vp).unwrap();
        spec.check_admissible(&v).unwrap();
        prop_assert_eq!(v.eval(SidedPoint::plus(v.t0()), 0).unwrap(), path.eval(SidedPoint::plus(path.t0()), 0).unwrap());
        prop_assert_eq!(v.eval(SidedPoint::minus(v.t1()), 0).unwrap(), path.eval(SidedPoint::minus(path.t1()), 0).unwrap());

        let (lo, hi) = match vp.side {
            Side::Plus => (vp.theta, vp.theta + vp.epsilon),
            _ => (vp.theta - vp.epsilon, vp.theta),
        };
        for k in 0..=400 {
            let t = k as f64 / 400.0;
            if t <= lo || t >= hi {
                prop_assert_eq!(sample(&v, t, 0), sample(&path, t, 0), "t = {}", t);
            }
        }
    }

    #[test]
    fn sup_norm_bounds((two_d, vp) in params()) {
        let (_, path) = fixture(if two_d { "ex5_2.toml" } else { "ex5_3.toml" });
        let v = build_variation(&path, &vp).unwrap();
        let lambda = vp.lambda_value();
        let xi = norm(&vp.xi);
        let c_bound = lambda * vp.epsilon * xi;
        let d_bound = xi.max((lambda / (lambda - 1.0)).abs() * xi);
        let (mut c_sup, mut d_sup) = (0.0f64, 0.0f64);
        let (lo, hi) = match vp.side {
            Side::Plus => (vp.theta, vp.theta + vp.epsilon),
            _ => (vp.theta - vp.epsilon, vp.theta),
        };
        for k in 0..=200 {
            let t = lo + (hi - lo) * k as f64 / 200.0;
            c_sup = c_sup.max(norm(&diff(&sample(&v, t, 0), &sample(&path, t, 0))));
            d_sup = d_sup.max(norm(&diff(&sample(&v, t, 1), &sample(&path, t, 1))));
        }
        prop_assert!(c_sup <= c_bound * (1.0 + 1e-9) + 1e-15, "{} > {}", c_sup, c_bound);
        prop_assert!(d_sup <= d_bound * (1.0 + 1e-9) + 1e-15, "{} > {}", d_sup, d_bound);
        // The peak sits at the split point and reaches the bound.
        let peak = match vp.side {
            Side::Plus => vp.theta + lambda * vp.epsilon,
            _ => vp.theta - lambda * vp.epsilon,
        };
        let at_peak = norm(&diff(&sample(&v, peak, 0), &sample(&path, peak, 0)));
        prop_assert!((at_peak - c_bound).abs() <= 1e-12 * (1.0 + c_bound));
    }
}

#[test]
fn increment_matches_whole_path_integrals() {
    let (spec, path) = fixture("ex5_3.toml");
    let vp = VariationParams { theta: 0.4, lambda: LambdaMode::Fixed(0.3), xi: vec![0.7], side: Side::Minus, epsilon: 0.05 };
    let v = build_variation(&path, &vp).unwrap();
    let whole = functional_value(&spec, &v, 1e-13).unwrap() - functional_value(&spec, &path, 1e-13).unwrap();
    let local = increment(&spec, &path, &vp, 1e-14).unwrap();
    assert!((whole - local).abs() <= 1e-10, "{whole} vs {local}");
}
