//! Scattering on compact potentials by direct integration of ψ″ = (V − k²)ψ.
//!
//! The transmitted wave ψ = e^{ikx} (C = 1) is set at x = b and integrated
//! back to x = −b, where ψ = Ae^{ikx} + Be^{−ikx} is projected out. Nothing is
//! shared with the Jost integration path, so the zeros of A(k) continued to
//! complex k give an independent check of the pole finder.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numerics::{Dopri5, OdeConfig};
use crate::{Error, Potential, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub k: f64,
}

impl ScatteringAmplitudes {
    pub fn transmission(&self) -> f64 {
        (self.c / self.a).norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        (self.b / self.a).norm_sqr()
    }
}

fn support(p: &Potential) -> Result<f64> {
    p.validate()?;
    match p {
        Potential::CutoffExponential { cutoff, .. } => Ok(*cutoff),
        _ => Err(Error::InvalidArgument(
            "transfer integration needs a compact (cutoff) potential",
        )),
    }
}

fn ode_config() -> OdeConfig {
    OdeConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_steps: 1_000_000,
    }
}

/// (A, B) for C = 1 at any complex k ≠ 0, by the same backward integration.
pub fn continued_amplitudes(p: &Potential, k: Complex64) -> Result<(Complex64, Complex64)> {
    let b = support(p)?;
    if b == 0.0 || p.is_zero() {
        return Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    if k.norm() * b < 1e-6 {
        return Err(Error::IllConditioned("k·b below 1e-6"));
    }
    let k2 = k * k;
    let rhs = |x: f64, y: &[Complex64; 2]| [y[1], (p.evaluate(x) - k2) * y[0]];
    let e = (I * k * b).exp();
    let mut s = Dopri5::new(b, [e, I * k * e], ode_config());
    let no_guard = |_: f64, _: &[Complex64; 2]| Ok(());
    // the kink of e^{−κ|x|} sits at the origin
    s.advance_to(0.0, rhs, no_guard)?;
    s.advance_to(-b, rhs, no_guard)?;
    let (psi, dpsi) = (s.y[0], s.y[1]);
    let x = -b;
    let a = (I * k * psi + dpsi) / (2.0 * I * k * (I * k * x).exp());
    let bb = (I * k * psi - dpsi) / (2.0 * I * k * (-I * k * x).exp());
    Ok((a, bb))
}

pub fn transfer_amplitudes(p: &Potential, k: f64) -> Result<ScatteringAmplitudes> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidArgument("transfer amplitudes need real k > 0"));
    }
    let (a, b) = continued_amplitudes(p, Complex64::new(k, 0.0))?;
    Ok(ScatteringAmplitudes {
        a,
        b,
        c: Complex64::new(1.0, 0.0),
        k,
    })
}

pub fn transmission(p: &Potential, k: f64) -> Result<f64> {
    Ok(transfer_amplitudes(p, k)?.transmission())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionSample {
    pub k: f64,
    pub t: f64,
    pub r: f64,
}

pub fn transmission_sample(p: &Potential, k: f64) -> Result<TransmissionSample> {
    let amp = transfer_amplitudes(p, k)?;
    Ok(TransmissionSample {
        k,
        t: amp.transmission(),
        r: amp.reflection(),
    })
}

/// Largest swing of T between neighbouring interior extrema of a sampled curve
/// (0 when T is monotone).
pub fn peak_prominence(samples: &[TransmissionSample]) -> f64 {
    let mut extrema = Vec::new();
    for w in samples.windows(3) {
        let (l, m, r) = (w[0].t, w[1].t, w[2].t);
        if (m - l) * (r - m) < 0.0 {
            extrema.push(m);
        }
    }
    extrema.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
}
