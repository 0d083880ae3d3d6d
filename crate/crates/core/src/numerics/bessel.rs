use num_complex::Complex64;

use super::gamma::recip_gamma;
use crate::{Error, Result};

pub const DEFAULT_MAX_TERMS: usize = 200;

fn negative_integer(nu: Complex64) -> Option<u32> {
    (nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() && nu.re > -1e6).then(|| (-nu.re) as u32)
}

/// Σ (−z²/4)ⁿ / (n! Γ(ν+n+1)), i.e. J_ν(z) / (z/2)^ν. Entire in both ν and z.
pub fn bessel_j_scaled(nu: Complex64, z: Complex64) -> Result<Complex64> {
    scaled_series(nu, z, DEFAULT_MAX_TERMS)
}

fn scaled_series(nu: Complex64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    if let Some(m) = negative_integer(nu) {
        // J_{-m} = (-1)^m J_m
        let s = scaled_series(Complex64::new(m as f64, 0.0), z, max_terms)?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * (0.5 * z).powu(2 * m) * s);
    }
    let q = -0.25 * z * z;
    let mut term = recip_gamma(nu + 1.0);
    let mut sum = term;
    // terms may start out tiny (1/Γ near its zeros) or grow before they decay
    let n_min = (-nu.re).max(0.0).ceil() as usize + 1;
    for n in 1..=max_terms {
        let denom = (nu + n as f64) * n as f64;
        term *= q / denom;
        sum += term;
        let shrinking = q.norm() < denom.norm();
        if n >= n_min && shrinking && term.norm() <= 1e-16 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonConvergence { terms: max_terms })
}

fn half_power(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return if nu == z {
            Ok(Complex64::new(1.0, 0.0))
        } else if nu.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::InvalidArgument("z = 0 requires Re nu > 0 or nu = 0"))
        };
    }
    Ok((nu * (0.5 * z).ln()).exp())
}

/// Bessel function of the first kind for complex order and argument (principal branch).
pub fn bessel_j(nu: Complex64, z: Complex64) -> Result<Complex64> {
    bessel_j_capped(nu, z, DEFAULT_MAX_TERMS)
}

pub fn bessel_j_capped(nu: Complex64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    if let Some(m) = negative_integer(nu) {
        let j = bessel_j_capped(Complex64::new(m as f64, 0.0), z, max_terms)?;
        return Ok(if m % 2 == 0 { j } else { -j });
    }
    let s = scaled_series(nu, z, max_terms)?;
    if s == Complex64::new(0.0, 0.0) {
        return Ok(s);
    }
    Ok(half_power(nu, z)? * s)
}

/// dJ_ν/dz = (J_{ν−1} − J_{ν+1}) / 2.
pub fn bessel_j_derivative(nu: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(0.5 * (bessel_j(nu - 1.0, z)? - bessel_j(nu + 1.0, z)?))
}

/// J′_ν(z) / (z/2)^ν for z ≠ 0.
pub fn bessel_j_derivative_scaled(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("scaled derivative needs z != 0"));
    }
    let h = 0.5 * z;
    Ok(0.5 * (scaled_series(nu - 1.0, z, DEFAULT_MAX_TERMS)? / h - h * scaled_series(nu + 1.0, z, DEFAULT_MAX_TERMS)?))
}
