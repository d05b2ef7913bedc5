//! Parse an integrand, differentiate it, and evaluate the derivative bundle.

use varicheck::expr::{parse_expression, IntegrandBundle, Var};

fn main() -> varicheck::Result<()> {
    let l = parse_expression("(v1 - v2^3)^2 + x1*v2^2", 2)?;
    println!("L        = {l}");
    let lv2 = l.differentiate(Var::V(1));
    println!("dL/dv2   = {lv2}");
    println!("at t=0, x=(1, 0), v=(0, 1): {}", lv2.eval(0.0, &[1.0, 0.0], &[0.0, 1.0])?);

    // The printed form parses back to the same tree.
    assert_eq!(parse_expression(&lv2.to_string(), 2)?, lv2);

    let b = IntegrandBundle::parse("x1^2*(1 - v1^2)", 1)?;
    println!("L_xx     = {}", b.lxx[0][0]);
    println!("L_vvv    = {}", b.lvvv[0][0][0]);

    match parse_expression("log(x1)", 1)?.eval(0.0, &[-1.0], &[0.0]) {
        Err(e) => println!("domain error reported: {e}"),
        Ok(v) => println!("unexpected value {v}"),
    }
    Ok(())
}
