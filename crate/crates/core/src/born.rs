//! First-order Born resonance residuals and their closed-form or asymptotic roots.
//!
//! Every residual r(k) vanishes at the Born estimate of a pole. Exponential and
//! cutoff residuals are normalised to 1 far from the potential; the Gaussian
//! residual is multiplied through by 2ik so that it is entire.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::{integrate_adaptive, QuadConfig};
use crate::potentials::{ExpTerm, GaussTerm};
use crate::{Error, Parity, Pole, PoleWarning, Potential, Provenance, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticCoordinates {
    /// 2ik = κ₀ + (α + iβ)/b with β = (2n−1)π/2 + δₙ; ωₙ = (2n−1)π/(2b).
    Cutoff {
        n: i64,
        alpha: f64,
        beta: f64,
        delta_n: f64,
        omega_n: f64,
    },
    /// k/a₀ = α − iβ with β² − α² = γₙ.
    Gaussian {
        n: i64,
        alpha: f64,
        beta: f64,
        gamma_n: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPole {
    pub pole: Pole,
    pub coordinates: AsymptoticCoordinates,
}

#[derive(Debug, Clone, PartialEq)]
enum Form {
    ExponentialSum(Vec<ExpTerm>),
    Cutoff { strength: f64, decay: f64, cutoff: f64 },
    GaussianSum(Vec<GaussTerm>),
    Generic { radius: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BornResidual {
    potential: Potential,
    parity: Parity,
    form: Form,
}

fn k_nonzero(k: Complex64) -> Result<()> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::ResidualPole(k));
    }
    if !k.re.is_finite() || !k.im.is_finite() {
        return Err(Error::NonFinite(k));
    }
    Ok(())
}

/// (1 − e^{−wb})/w, with a Taylor branch near w = 0.
fn cutoff_factor(w: Complex64, b: f64) -> Complex64 {
    let wb = w * b;
    if wb.norm() < 1e-3 {
        let mut term = Complex64::new(b, 0.0);
        let mut sum = term;
        for n in 1..6 {
            term *= -wb / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        (1.0 - (-wb).exp()) / w
    }
}

impl BornResidual {
    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, k: Complex64) -> Result<Complex64> {
        let sigma = self.parity.sigma();
        match &self.form {
            Form::ExponentialSum(terms) => {
                k_nonzero(k)?;
                let mut sum = Complex64::new(1.0, 0.0);
                for t in terms {
                    let d = t.decay - 2.0 * I * k;
                    if d == Complex64::new(0.0, 0.0) {
                        return Err(Error::ResidualPole(k));
                    }
                    sum += t.strength / (2.0 * I * k) * (1.0 / t.decay + sigma / d);
                }
                Ok(sum)
            }
            Form::Cutoff {
                strength,
                decay,
                cutoff,
            } => {
                k_nonzero(k)?;
                let b = *cutoff;
                let first = (1.0 - (-decay * b).exp()) / decay;
                let second = cutoff_factor(*decay - 2.0 * I * k, b);
                Ok(1.0 + strength / (2.0 * I * k) * (first + sigma * second))
            }
            Form::GaussianSum(terms) => {
                let mut sum = 2.0 * I * k;
                for t in terms {
                    let a = t.width;
                    sum += t.strength * PI.sqrt() / a * (1.0 + sigma * (-(k * k) / (a * a)).exp());
                }
                Ok(sum)
            }
            Form::Generic { radius } => {
                k_nonzero(k)?;
                // 1 + (1/2ik)∫V(x)(1 + σe^{−2ikx})dx over the symmetric support
                let p = &self.potential;
                let cfg = QuadConfig::default();
                let integrand = |x: f64| p.evaluate(x) * (1.0 + sigma * (2.0 * k * x).cos());
                let integral = integrate_adaptive(integrand, 0.0, *radius, &cfg)?;
                Ok(1.0 + 2.0 * integral / (2.0 * I * k))
            }
        }
    }

    /// The residual times Π_j (κ_j − 2ik) for exponential sums, which removes
    /// the poles next to the weak-coupling roots without moving any root;
    /// other families are returned unchanged.
    pub fn eval_regularized(&self, k: Complex64) -> Result<Complex64> {
        match &self.form {
            Form::ExponentialSum(terms) => {
                let factor: Complex64 = terms.iter().map(|t| t.decay - 2.0 * I * k).product();
                if factor == Complex64::new(0.0, 0.0) {
                    // limit of the product at a decay-matching point
                    k_nonzero(k)?;
                    let sigma = self.parity.sigma();
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, t) in terms.iter().enumerate() {
                        let others: Complex64 = terms
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != j)
                            .map(|(_, o)| o.decay - 2.0 * I * k)
                            .product();
                        if t.decay - 2.0 * I * k == Complex64::new(0.0, 0.0) {
                            acc += others * sigma * t.strength / (2.0 * I * k);
                        }
                    }
                    return Ok(acc);
                }
                Ok(self.eval(k)? * factor)
            }
            _ => self.eval(k),
        }
    }
}

pub fn residual_exponential_sum(p: &Potential, parity: Parity) -> Result<BornResidual> {
    p.validate()?;
    match p {
        Potential::ExponentialSum(terms) => Ok(BornResidual {
            potential: p.clone(),
            parity,
            form: Form::ExponentialSum(terms.clone()),
        }),
        _ => Err(Error::InvalidArgument("expected an exponential sum")),
    }
}

pub fn residual_cutoff(p: &Potential, parity: Parity) -> Result<BornResidual> {
    p.validate()?;
    match *p {
        Potential::CutoffExponential {
            strength,
            decay,
            cutoff,
        } => Ok(BornResidual {
            potential: p.clone(),
            parity,
            form: Form::Cutoff {
                strength,
                decay,
                cutoff,
            },
        }),
        _ => Err(Error::InvalidArgument("expected a cutoff exponential")),
    }
}

pub fn residual_gaussian_sum(p: &Potential, parity: Parity) -> Result<BornResidual> {
    p.validate()?;
    match p {
        Potential::GaussianSum(terms) => Ok(BornResidual {
            potential: p.clone(),
            parity,
            form: Form::GaussianSum(terms.clone()),
        }),
        _ => Err(Error::InvalidArgument("expected a Gaussian sum")),
    }
}

/// Amplitude by quadrature for any family. Diagnostic only: trustworthy near
/// the real axis, where no analytic split of the integral is needed.
pub fn residual_generic(p: &Potential, parity: Parity) -> Result<BornResidual> {
    p.validate()?;
    let radius = p.support_radius(1e-14);
    Ok(BornResidual {
        potential: p.clone(),
        parity,
        form: Form::Generic { radius },
    })
}

/// The family-specific residual where one exists, the quadrature form otherwise.
pub fn residual_for(p: &Potential, parity: Parity) -> Result<BornResidual> {
    match p {
        Potential::ExponentialSum(_) => residual_exponential_sum(p, parity),
        Potential::CutoffExponential { .. } => residual_cutoff(p, parity),
        Potential::GaussianSum(_) => residual_gaussian_sum(p, parity),
        Potential::SuperGaussian {
            strength,
            width,
            exponent,
        } => {
            if *exponent == 1.0 {
                residual_exponential_sum(&Potential::exponential(*strength, *width), parity)
            } else if *exponent == 2.0 {
                residual_gaussian_sum(&Potential::gaussian(*strength, *width), parity)
            } else {
                residual_generic(p, parity)
            }
        }
    }
}

fn axis_tol(p: &Potential) -> f64 {
    1e-6 * p.scale()
}

/// k = −(i/2)(κⱼ + σVⱼ/κⱼ) for every term and parity, completed so that each
/// pole off the imaginary axis comes with its exact mirror −conj(k).
pub fn poles_exponential_sum(p: &Potential) -> Result<Vec<Pole>> {
    p.validate()?;
    let Potential::ExponentialSum(terms) = p else {
        return Err(Error::InvalidArgument("expected an exponential sum"));
    };
    let tol = axis_tol(p);
    let mut out: Vec<Pole> = Vec::new();
    for parity in Parity::BOTH {
        let residual = residual_exponential_sum(p, parity)?;
        let sigma = parity.sigma();
        for t in terms {
            let k = -0.5 * I * (t.decay + sigma * t.strength / t.decay);
            let k = if k.re < -tol { -k.conj() } else { k };
            let dup = out
                .iter()
                .any(|q| q.parity == parity && (q.k - k).norm() <= 1e-12 * p.scale().max(k.norm()));
            if dup {
                continue;
            }
            let r = residual.eval(k).map(|v| v.norm()).unwrap_or(f64::INFINITY);
            let pole = Pole::new(k, parity, r, Provenance::BornClosedForm, tol);
            out.push(pole);
            if k.re.abs() >= tol {
                let mut m = pole.mirror(tol);
                m.residual = residual.eval(m.k).map(|v| v.norm()).unwrap_or(f64::INFINITY);
                out.push(m);
            }
        }
    }
    sort_poles(&mut out);
    Ok(out)
}

pub(crate) fn sort_poles(poles: &mut [Pole]) {
    poles.sort_by(|a, b| a.k.re.total_cmp(&b.k.re).then(a.k.im.total_cmp(&b.k.im)));
}

/// Large-|n| solution of the cutoff residual. Positive n gives Re k > 0 with
/// σ = +1 for even n; n ≤ 0 gives the mirror poles, where the rule is reversed.
/// Both members of every mirror pair are returned once.
pub fn poles_cutoff_asymptotic(p: &Potential, n_min: i64, n_max: i64) -> Result<Vec<AsymptoticPole>> {
    p.validate()?;
    let Potential::CutoffExponential {
        strength: v0,
        decay: kappa,
        cutoff: b,
    } = *p
    else {
        return Err(Error::InvalidArgument("expected a cutoff exponential"));
    };
    if v0 <= 0.0 || b <= 0.0 {
        return Err(Error::InvalidArgument("cutoff asymptotics need V0 > 0 and b > 0"));
    }
    let tol = axis_tol(p);
    let mut indices: Vec<i64> = (n_min..=n_max).map(|n| if n >= 1 { n } else { 1 - n }).collect();
    indices.sort_unstable();
    indices.dedup();
    let mut out = Vec::new();
    for n in indices {
        let m = (2 * n - 1) as f64;
        let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        let sigma = parity.sigma();
        let l = (kappa * m * PI / (2.0 * v0 * b)).ln();
        let re = m * PI / (4.0 * b) + (sigma * v0 / kappa - l / b) / (m * PI);
        let im = -0.5 * (kappa + l / b);
        let k = Complex64::new(re, im);
        let residual = residual_cutoff(p, parity)?;
        let r = residual.eval(k).map(|v| v.norm()).unwrap_or(f64::INFINITY);
        let mut pole = Pole::new(k, parity, r, Provenance::BornAsymptotic, tol);
        if m.abs() < 5.0 {
            pole.warning = Some(PoleWarning::OutsideAsymptoticRegime);
        }
        let w = b * (2.0 * I * k - kappa);
        let coordinates = AsymptoticCoordinates::Cutoff {
            n,
            alpha: w.re,
            beta: w.im,
            delta_n: w.im - m * PI / 2.0,
            omega_n: m * PI / (2.0 * b),
        };
        let mut mirror = pole.mirror(tol);
        mirror.residual = residual.eval(mirror.k).map(|v| v.norm()).unwrap_or(f64::INFINITY);
        let wm = b * (2.0 * I * mirror.k - kappa);
        let mirror_coordinates = AsymptoticCoordinates::Cutoff {
            n: 1 - n,
            alpha: wm.re,
            beta: wm.im,
            delta_n: wm.im + m * PI / 2.0,
            omega_n: -m * PI / (2.0 * b),
        };
        out.push(AsymptoticPole { pole, coordinates });
        out.push(AsymptoticPole {
            pole: mirror,
            coordinates: mirror_coordinates,
        });
    }
    out.sort_by(|a, b| {
        a.pole
            .k
            .re
            .total_cmp(&b.pole.k.re)
            .then(a.pole.k.im.total_cmp(&b.pole.k.im))
    });
    Ok(out)
}

/// Large-n poles of a single Gaussian, k = a₀(α − iβ), from
/// 2αβ = (n − 3/4)π (attractive) or (n + 1/4)π (repulsive) and
/// 2√n = (|V₀|/a₀²)e^{γₙ}, γₙ = β² − α². σ = +1 for even n in both cases.
pub fn poles_gaussian_asymptotic(p: &Potential, n_min: i64, n_max: i64) -> Result<Vec<AsymptoticPole>> {
    p.validate()?;
    let (v0, a0) = match p {
        Potential::GaussianSum(t) if t.len() == 1 => (t[0].strength, t[0].width),
        _ => return Err(Error::InvalidArgument("expected a single Gaussian")),
    };
    if n_min < 2 {
        return Err(Error::InvalidArgument("Gaussian asymptotics need n >= 2"));
    }
    if v0 == 0.0 {
        return Err(Error::InvalidArgument("Gaussian asymptotics need V0 != 0"));
    }
    let tol = axis_tol(p);
    let mut out = Vec::new();
    for n in n_min..=n_max {
        let nf = n as f64;
        let phase = if v0 > 0.0 { nf - 0.75 } else { nf + 0.25 };
        let ab = 0.5 * phase * PI;
        let gamma = (2.0 * nf.sqrt() * a0 * a0 / v0.abs()).ln();
        let alpha = (-0.5 * gamma + (0.25 * gamma * gamma + ab * ab).sqrt()).sqrt();
        let beta = ab / alpha;
        let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        let k = a0 * Complex64::new(alpha, -beta);
        let residual = residual_gaussian_sum(p, parity)?;
        let r = residual.eval(k)?.norm();
        let pole = Pole::new(k, parity, r, Provenance::BornAsymptotic, tol);
        let coordinates = AsymptoticCoordinates::Gaussian {
            n,
            alpha,
            beta,
            gamma_n: gamma,
        };
        let mut mirror = pole.mirror(tol);
        mirror.residual = residual.eval(mirror.k)?.norm();
        out.push(AsymptoticPole { pole, coordinates });
        out.push(AsymptoticPole {
            pole: mirror,
            coordinates,
        });
    }
    out.sort_by(|a, b| {
        a.pole
            .k
            .re
            .total_cmp(&b.pole.k.re)
            .then(a.pole.k.im.total_cmp(&b.pole.k.im))
    });
    Ok(out)
}
