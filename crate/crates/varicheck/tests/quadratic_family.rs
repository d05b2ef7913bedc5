mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varicheck::engine::{excess, legendre_form};
use varicheck::problem::SidedPoint;

#[test]
fn excess_is_the_quadratic_form_of_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let q = common::random_quadratic(&mut rng);
        for _ in 0..4 {
            let t = rng.gen_range(0.0..1.0);
            let eta: Vec<f64> = (0..q.n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let p = SidedPoint::two_sided(t);
            let e = excess(&q.spec, &q.path, p, &eta).unwrap();
            let qa = q.a_form(t, &eta);
            let leg = legendre_form(&q.spec, &q.path, p, &eta).unwrap();
            assert!((e - qa).abs() <= 1e-9 * 1.0f64.max(qa.abs()), "E = {e}, eta'A eta = {qa}");
            // L_vv = A + A', so the Legendre form is twice the excess.
            assert!((leg - 2.0 * e).abs() <= 1e-9 * 1.0f64.max(leg.abs()), "Leg = {leg}, E = {e}");
        }
    }
}
