//! Symmetric model potentials V(x) = V(−x).
//!
//! Strengths are the positive prefactors of attractive wells: a term with
//! strength V contributes −V·(shape). Repulsive terms carry negative strength.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// +1 for even, −1 for odd.
    pub fn sigma(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn from_sigma(sigma: f64) -> Self {
        if sigma >= 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// −V e^{−κ|x|}; κ may be complex (oscillating tails come in conjugate pairs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub strength: f64,
    pub decay: Complex64,
}

/// −V e^{−a²x²}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussTerm {
    pub strength: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    ExponentialSum(Vec<ExpTerm>),
    /// −V₀ e^{−κ₀|x|} for |x| ≤ b, zero outside.
    CutoffExponential {
        strength: f64,
        decay: f64,
        cutoff: f64,
    },
    GaussianSum(Vec<GaussTerm>),
    /// −V₀ exp(−(a₀|x|)^λ), λ ≥ 1.
    SuperGaussian {
        strength: f64,
        width: f64,
        exponent: f64,
    },
}

impl Potential {
    pub fn exponential(strength: f64, decay: f64) -> Self {
        Potential::ExponentialSum(vec![ExpTerm {
            strength,
            decay: Complex64::new(decay, 0.0),
        }])
    }

    pub fn cutoff(strength: f64, decay: f64, cutoff: f64) -> Self {
        Potential::CutoffExponential {
            strength,
            decay,
            cutoff,
        }
    }

    pub fn gaussian(strength: f64, width: f64) -> Self {
        Potential::GaussianSum(vec![GaussTerm { strength, width }])
    }

    pub fn super_gaussian(strength: f64, width: f64, exponent: f64) -> Self {
        Potential::SuperGaussian {
            strength,
            width,
            exponent,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64| v.is_finite();
        match self {
            Potential::ExponentialSum(terms) => {
                for t in terms {
                    if !finite(t.strength) || !finite(t.decay.re) || !finite(t.decay.im) {
                        return Err(Error::InvalidPotential("non-finite exponential parameter"));
                    }
                    if t.decay.re <= 0.0 {
                        return Err(Error::InvalidPotential("exponential decay rates need Re kappa > 0"));
                    }
                    if t.decay.im != 0.0 {
                        let partners = terms
                            .iter()
                            .filter(|u| u.decay == t.decay.conj() && u.strength == t.strength)
                            .count();
                        let copies = terms
                            .iter()
                            .filter(|u| u.decay == t.decay && u.strength == t.strength)
                            .count();
                        if partners != copies {
                            return Err(Error::InvalidPotential(
                                "complex decay rates must come in conjugate pairs of equal strength",
                            ));
                        }
                    }
                }
                Ok(())
            }
            Potential::CutoffExponential {
                strength,
                decay,
                cutoff,
            } => {
                if !finite(*strength) || !finite(*decay) || !finite(*cutoff) || *decay <= 0.0 || *cutoff < 0.0 {
                    return Err(Error::InvalidPotential(
                        "cutoff exponential needs kappa0 > 0 and b >= 0",
                    ));
                }
                Ok(())
            }
            Potential::GaussianSum(terms) => {
                if terms
                    .iter()
                    .any(|t| !finite(t.strength) || !finite(t.width) || t.width <= 0.0)
                {
                    return Err(Error::InvalidPotential("Gaussian widths must be positive"));
                }
                Ok(())
            }
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } => {
                if !finite(*strength) || !finite(*width) || *width <= 0.0 || !(*exponent >= 1.0) || !finite(*exponent) {
                    return Err(Error::InvalidPotential("super-Gaussian needs a0 > 0 and lambda >= 1"));
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let ax = x.abs();
        match self {
            Potential::ExponentialSum(terms) => {
                let v: Complex64 = terms.iter().map(|t| -t.strength * (-t.decay * ax).exp()).sum();
                v.re
            }
            Potential::CutoffExponential {
                strength,
                decay,
                cutoff,
            } => {
                if ax > *cutoff {
                    0.0
                } else {
                    -strength * (-decay * ax).exp()
                }
            }
            Potential::GaussianSum(terms) => terms
                .iter()
                .map(|t| -t.strength * (-(t.width * ax).powi(2)).exp())
                .sum(),
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } => -strength * (-(width * ax).powf(*exponent)).exp(),
        }
    }

    /// Analytic continuation of the x > 0 branch to complex x (Re x > 0).
    pub fn evaluate_complex(&self, x: Complex64) -> Complex64 {
        match self {
            Potential::ExponentialSum(terms) => terms.iter().map(|t| -t.strength * (-t.decay * x).exp()).sum(),
            Potential::CutoffExponential {
                strength,
                decay,
                cutoff,
            } => {
                if x.re > *cutoff {
                    Complex64::new(0.0, 0.0)
                } else {
                    -strength * (-decay * x).exp()
                }
            }
            Potential::GaussianSum(terms) => terms.iter().map(|t| -t.strength * (-(t.width * x).powu(2)).exp()).sum(),
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } => -strength * (-(width * x).powf(*exponent)).exp(),
        }
    }

    /// Upper bound on |V(x)| for x ≥ 0, monotone decreasing in x.
    fn envelope(&self, x: f64) -> f64 {
        match self {
            Potential::ExponentialSum(terms) => terms.iter().map(|t| t.strength.abs() * (-t.decay.re * x).exp()).sum(),
            Potential::CutoffExponential { .. } => self.evaluate(x).abs(),
            Potential::GaussianSum(terms) => terms
                .iter()
                .map(|t| t.strength.abs() * (-(t.width * x).powi(2)).exp())
                .sum(),
            Potential::SuperGaussian { .. } => self.evaluate(x).abs(),
        }
    }

    /// Smallest R with |V(x)| < ε for |x| > R (via the monotone envelope).
    pub fn support_radius(&self, epsilon: f64) -> f64 {
        match self {
            Potential::CutoffExponential { cutoff, .. } => *cutoff,
            Potential::ExponentialSum(terms) if terms.len() == 1 => {
                let t = terms[0];
                (t.strength.abs() / epsilon).ln().max(0.0) / t.decay.re
            }
            Potential::GaussianSum(terms) if terms.len() == 1 => {
                let t = terms[0];
                (t.strength.abs() / epsilon).ln().max(0.0).sqrt() / t.width
            }
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } => (strength.abs() / epsilon).ln().max(0.0).powf(1.0 / exponent) / width,
            _ => {
                if self.envelope(0.0) < epsilon {
                    return 0.0;
                }
                let mut hi = 1.0 / self.scale();
                while self.envelope(hi) >= epsilon {
                    hi *= 2.0;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.envelope(mid) >= epsilon {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-15 * hi {
                        break;
                    }
                }
                hi
            }
        }
    }

    /// Dominant (slowest) decay scale: κ₀ or a₀ of the family. Used as the unit of k.
    pub fn scale(&self) -> f64 {
        let min = |it: &mut dyn Iterator<Item = f64>| it.fold(f64::INFINITY, f64::min);
        let s = match self {
            Potential::ExponentialSum(terms) => min(&mut terms.iter().map(|t| t.decay.re)),
            Potential::CutoffExponential { decay, .. } => *decay,
            Potential::GaussianSum(terms) => min(&mut terms.iter().map(|t| t.width)),
            Potential::SuperGaussian { width, .. } => *width,
        };
        if s.is_finite() {
            s
        } else {
            1.0
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Potential::ExponentialSum(terms) => terms.iter().all(|t| t.strength == 0.0),
            Potential::CutoffExponential { strength, cutoff, .. } => *strength == 0.0 || *cutoff == 0.0,
            Potential::GaussianSum(terms) => terms.iter().all(|t| t.strength == 0.0),
            Potential::SuperGaussian { strength, .. } => *strength == 0.0,
        }
    }

    /// The λ = 1 super-Gaussian is a plain exponential; other families unchanged.
    pub fn canonical(&self) -> Potential {
        match self {
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } if *exponent == 1.0 => Potential::exponential(*strength, *width),
            p => p.clone(),
        }
    }
}

/// −V₀ cos(ω₀x) e^{−κ₀|x|} written as two exponentials with κ = κ₀ ± iω₀ and
/// strengths V₀/2. For ω₀ = 0 the terms merge into a single exponential.
pub fn oscillatory_to_exponential_sum(strength: f64, decay: f64, frequency: f64) -> Potential {
    if frequency == 0.0 {
        return Potential::exponential(strength, decay);
    }
    let half = 0.5 * strength;
    Potential::ExponentialSum(vec![
        ExpTerm {
            strength: half,
            decay: Complex64::new(decay, frequency),
        },
        ExpTerm {
            strength: half,
            decay: Complex64::new(decay, -frequency),
        },
    ])
}
