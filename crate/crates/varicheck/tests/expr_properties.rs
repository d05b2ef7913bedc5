use proptest::prelude::*;
use varicheck::expr::{add, call, div, mul, neg, parse_expression, pow, sub, Expr, Func, Var};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-3.0..3.0f64).prop_map(|c| Expr::Const((c * 8.0).round() / 8.0)),
        Just(Expr::Var(Var::T)),
        (0..2usize).prop_map(|i| Expr::Var(Var::X(i))),
        (0..2usize).prop_map(|i| Expr::Var(Var::V(i))),
    ]
}

// Trees that are smooth and defined everywhere on the sampling box.
fn smooth_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| {
                // 2 + b^2 keeps the denominator away from zero
                let den = Expr::Add(Box::new(Expr::Const(2.0)), Box::new(Expr::Pow(Box::new(b), 2)));
                Expr::Div(Box::new(a), Box::new(den))
            }),
            (inner.clone(), 0..4i32).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            inner.clone().prop_map(|a| Expr::Call(Func::Sin, Box::new(a))),
            inner.clone().prop_map(|a| Expr::Call(Func::Cos, Box::new(a))),
            inner.prop_map(|a| Expr::Call(Func::Exp, Box::new(Expr::Call(Func::Sin, Box::new(a))))),
        ]
    })
}

// Rebuild a tree through the simplifying constructors.
fn rebuild(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(a) => neg(rebuild(a)),
        Expr::Add(a, b) => add(rebuild(a), rebuild(b)),
        Expr::Sub(a, b) => sub(rebuild(a), rebuild(b)),
        Expr::Mul(a, b) => mul(rebuild(a), rebuild(b)),
        Expr::Div(a, b) => div(rebuild(a), rebuild(b)),
        Expr::Pow(a, n) => pow(rebuild(a), *n),
        Expr::Call(f, a) => call(*f, rebuild(a)),
    }
}

fn point() -> impl Strategy<Value = (f64, [f64; 2], [f64; 2])> {
    (-1.0..1.0f64, [-1.0..1.0f64, -1.0..1.0f64], [-1.0..1.0f64, -1.0..1.0f64])
}

fn shifted(var: Var, h: f64, t: f64, x: [f64; 2], v: [f64; 2]) -> (f64, [f64; 2], [f64; 2]) {
    let (mut t, mut x, mut v) = (t, x, v);
    match var {
        Var::T => t += h,
        Var::X(i) => x[i] += h,
        Var::V(i) => v[i] += h,
    }
    (t, x, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn symbolic_derivative_matches_finite_differences(
        e in smooth_expr(),
        (t, x, v) in point(),
        var in prop_oneof![Just(Var::T), Just(Var::X(0)), Just(Var::X(1)), Just(Var::V(0)), Just(Var::V(1))],
    ) {
        let d = e.differentiate(var).eval(t, &x, &v).unwrap();
        let f = |h: f64| {
            let (t, x, v) = shifted(var, h, t, x, v);
            e.eval(t, &x, &v).unwrap()
        };
        // Five-point stencil
        let h = 1e-3;
        let fd = (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
        let scale = 1.0f64.max(d.abs()).max(f(0.0).abs());
        prop_assert!((d - fd).abs() <= 1e-6 * scale, "{e}: d/d{var:?} = {d}, fd = {fd}");
    }

    #[test]
    fn printed_form_parses_back(e in smooth_expr(), (t, x, v) in point()) {
        let text = e.to_string();
        let back = parse_expression(&text, 2).unwrap();
        prop_assert_eq!(back.eval(t, &x, &v).unwrap(), e.eval(t, &x, &v).unwrap());
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn simplification_preserves_value(e in smooth_expr(), (t, x, v) in point()) {
        let a = e.eval(t, &x, &v).unwrap();
        let b = rebuild(&e).eval(t, &x, &v).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * 1.0f64.max(a.abs()), "{e}: {a} vs {b}");
    }
}

#[test]
fn sgn_is_rejected_at_the_kink() {
    let d = parse_expression("abs(x1)", 1).unwrap().differentiate(Var::X(0));
    assert!(d.eval(0.0, &[0.0], &[0.0]).is_err());
    assert_eq!(d.eval(0.0, &[-2.0], &[0.0]).unwrap(), -1.0);
}

#[test]
fn non_integer_power_goes_through_exp_log() {
    let e = parse_expression("x1^0.5", 1).unwrap();
    assert!((e.eval(0.0, &[4.0], &[0.0]).unwrap() - 2.0).abs() < 1e-12);
    assert!(e.eval(0.0, &[-4.0], &[0.0]).is_err());
}
