//! Exact poles of the single exponential well −V₀e^{−κ₀|x|}.
//!
//! With ν = −2ik/κ₀ and z = 2√V₀/κ₀ the odd poles are the zeros of J_ν(z) and
//! the even poles the zeros of J′_ν(z), both taken in ν at fixed z. The
//! residuals are divided by (z/2)^ν, which leaves the zeros unchanged and
//! makes the functions entire in k.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numerics::{bessel_j_derivative_scaled, bessel_j_scaled, newton_complex, RootFindConfig};
use crate::{Error, Parity, Pole, Provenance, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactResidual {
    pub strength: f64,
    pub decay: f64,
    pub parity: Parity,
    z: f64,
}

impl ExactResidual {
    pub fn order(&self, k: Complex64) -> Complex64 {
        -2.0 * I * k / self.decay
    }

    pub fn eval(&self, k: Complex64) -> Result<Complex64> {
        let nu = self.order(k);
        let z = Complex64::new(self.z, 0.0);
        match self.parity {
            Parity::Odd => bessel_j_scaled(nu, z),
            Parity::Even => bessel_j_derivative_scaled(nu, z),
        }
    }
}

pub fn exact_residual_exponential(strength: f64, decay: f64, parity: Parity) -> Result<ExactResidual> {
    if !(strength > 0.0) || !(decay > 0.0) || !strength.is_finite() || !decay.is_finite() {
        return Err(Error::InvalidArgument("exact exponential needs V0 > 0 and kappa0 > 0"));
    }
    Ok(ExactResidual {
        strength,
        decay,
        parity,
        z: 2.0 * strength.sqrt() / decay,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactPoles {
    pub poles: Vec<Pole>,
    /// Seed index n and the reason its refinement was rejected.
    pub failures: Vec<(u32, Error)>,
}

/// Newton roots seeded at −i(κ₀/2)(n ∓ 0.05): odd roots sit just above
/// −inκ₀/2, even roots just below.
pub fn exact_poles_exponential(strength: f64, decay: f64, parity: Parity, n_max: u32) -> Result<ExactPoles> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1"));
    }
    let residual = exact_residual_exponential(strength, decay, parity)?;
    let cfg = RootFindConfig::default();
    let shift = match parity {
        Parity::Odd => -0.05,
        Parity::Even => 0.05,
    };
    let tol = 1e-6 * decay;
    let mut poles: Vec<Pole> = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let seed = Complex64::new(0.0, -0.5 * decay * (n as f64 + shift));
        match newton_complex(|k| residual.eval(k), seed, &cfg) {
            Ok(root) => {
                if root.residual >= 1e-10 {
                    failures.push((
                        n,
                        Error::MaxIterations {
                            iterations: root.iterations,
                            at: root.k,
                            residual: root.residual,
                        },
                    ));
                } else if poles.iter().any(|p| (p.k - root.k).norm() < 1e-8 * decay) {
                    failures.push((n, Error::InvalidArgument("seed converged to an already found root")));
                } else {
                    poles.push(Pole::new(root.k, parity, root.residual, Provenance::ExactBessel, tol));
                }
            }
            Err(e) => failures.push((n, e)),
        }
    }
    Ok(ExactPoles { poles, failures })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSeriesParams {
    /// Last retained index N of the series (1..=5).
    pub order: u32,
    /// α = V₀/κ₀².
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSeriesRoot {
    pub order: u32,
    pub alpha: f64,
    /// ν = −N + δ_N.
    pub delta: Complex64,
    pub nu: Complex64,
}

impl TruncatedSeriesRoot {
    /// k = iκ₀ν/2.
    pub fn k(&self, decay: f64) -> Complex64 {
        0.5 * I * decay * self.nu
    }
}

/// Σ_{n≤N} (−α)ⁿ/(n!Γ(ν+n+1)) with ν = −N + δ, multiplied by Γ(1+δ): a
/// polynomial of degree N in δ.
fn truncated_polynomial(order: u32, alpha: f64, delta: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coeff = 1.0;
    for n in 0..=order {
        if n > 0 {
            coeff *= -alpha / n as f64;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for j in 0..(order - n) {
            prod *= delta - j as f64;
        }
        sum += coeff * prod;
    }
    sum
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Root δ_N of the order-N truncated odd-parity series near ν = −N.
pub fn truncated_series_root(params: TruncatedSeriesParams) -> Result<TruncatedSeriesRoot> {
    let TruncatedSeriesParams { order, alpha } = params;
    if !(1..=5).contains(&order) {
        return Err(Error::InvalidArgument("truncation order must be between 1 and 5"));
    }
    if !(alpha > 0.0 && alpha < 0.2) {
        return Err(Error::InvalidArgument("truncated series needs 0 < alpha < 0.2"));
    }
    let delta = if order == 1 {
        Complex64::new(alpha, 0.0)
    } else {
        // leading balance δ(−1)^{N−1}(N−1)! + (−α)^N/N! = 0; solve in u = δ/δ₀
        let scale = factorial(order - 1);
        let d0 = alpha.powi(order as i32) / (factorial(order) * scale);
        let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
        let q = |u: Complex64| Ok(sign * truncated_polynomial(order, alpha, d0 * u) / (d0 * scale));
        let cfg = RootFindConfig {
            residual_tolerance: 1e-13,
            step_tolerance: 1e-14,
            ..Default::default()
        };
        d0 * newton_complex(q, Complex64::new(1.0, 0.0), &cfg)?.k
    };
    Ok(TruncatedSeriesRoot {
        order,
        alpha,
        delta,
        nu: Complex64::new(-(order as f64), 0.0) + delta,
    })
}
