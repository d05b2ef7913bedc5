//! Adaptive Gauss–Kronrod (7/15 point) quadrature by bisection.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 48;

/// One Gauss–Kronrod panel: `(kronrod estimate, |kronrod - gauss|, ∫|f| estimate)`.
fn panel<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((k * h, ((k - g) * h).abs(), abs * h.abs()))
}

/// Integrate `f` over `[a, b]` to absolute error `tol`.
pub fn integrate<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a).abs();
    let mut total = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err, abs) = panel(&f, lo, hi)?;
        let local = tol * (hi - lo).abs() / width;
        let floor = 50.0 * f64::EPSILON * abs;
        if err <= local.max(floor) {
            total += val;
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature { a: lo, b: hi, err, tol: local });
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        for deg in 0..=10 {
            let got = integrate(|t| Ok(t.powi(deg)), -0.5, 1.5, 1e-14).unwrap();
            let want = (1.5f64.powi(deg + 1) - (-0.5f64).powi(deg + 1)) / (deg + 1) as f64;
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "deg {deg}: {got} vs {want}");
        }
    }

    #[test]
    fn adapts_to_a_peak() {
        let got = integrate(|t| Ok(1.0 / (1e-4 + t * t)), -1.0, 1.0, 1e-10).unwrap();
        let want = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((got - want).abs() < 1e-8);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|t: f64| Ok(t.abs().powf(-0.99)), -1.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
