use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn small_positive_integer(z: Complex64) -> Option<u32> {
    (z.im == 0.0 && z.re >= 1.0 && z.re <= 30.0 && z.re == z.re.round()).then_some(z.re as u32)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn non_positive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Lanczos sum for Re z >= 1/2, returned as ln Γ(z).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        a += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// sin(πz) with the real part reduced first, so zeros at the integers are exact
/// and small offsets from them keep full relative precision.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let (s, c) = ((PI * r).sin() * sign, (PI * r).cos() * sign);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// Γ(z) via the Lanczos approximation, reflected for Re z < 1/2.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(z));
    }
    if non_positive_integer(z) {
        return Err(Error::GammaPole(z));
    }
    if let Some(n) = small_positive_integer(z) {
        return Ok(Complex64::new(factorial(n - 1), 0.0));
    }
    if z.re < 0.5 {
        let g = ln_gamma_right(1.0 - z).exp();
        Ok(PI / (sin_pi(z) * g))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// 1/Γ(z), an entire function: exactly zero at the non-positive integers.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if non_positive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if let Some(n) = small_positive_integer(z) {
        return Complex64::new(1.0 / factorial(n - 1), 0.0);
    }
    if z.re < 0.5 {
        sin_pi(z) * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}
