use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_depth: 40,
        }
    }
}

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
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[i];
        if i % 2 == 1 {
            gauss += s * WG[i / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

fn recurse<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: Complex64,
    err: f64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    if err <= tol {
        return Ok(whole);
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence);
    }
    let m = 0.5 * (a + b);
    let (l, el) = gk15(f, a, m);
    let (r, er) = gk15(f, m, b);
    Ok(recurse(f, a, m, l, el, 0.5 * tol, depth - 1)? + recurse(f, m, b, r, er, 0.5 * tol, depth - 1)?)
}

/// Adaptive Gauss–Kronrod (7/15) integral of a complex integrand over [a, b].
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (whole, err) = gk15(&mut f, a, b);
    if !whole.re.is_finite() || !whole.im.is_finite() {
        return Err(Error::QuadratureNonConvergence);
    }
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.norm());
    recurse(&mut f, a, b, whole, err, tol, cfg.max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillatory_integrand() {
        let w = 7.0;
        let v = integrate_adaptive(|x| Complex64::new(0.0, w * x).exp(), 0.0, 3.0, &QuadConfig::default()).unwrap();
        let exact = (Complex64::new(0.0, 3.0 * w).exp() - 1.0) / Complex64::new(0.0, w);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn kink_is_resolved() {
        let v = integrate_adaptive(
            |x| Complex64::new((-x.abs()).exp(), 0.0),
            -2.0,
            1.0,
            &QuadConfig::default(),
        )
        .unwrap();
        let exact = 2.0 - (-2f64).exp() - (-1f64).exp();
        assert!((v.re - exact).abs() < 1e-12);
    }
}
