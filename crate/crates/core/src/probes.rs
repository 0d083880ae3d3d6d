//! Summary statistics for pole ladders: alignment of cutoff-induced poles
//! along Im k = −κ₀/2 and the asymptotic argument of super-Gaussian poles.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Classification, Pole};

#[derive(Debug, Clone, PartialEq)]
pub struct LadderStats {
    pub cutoff: f64,
    pub count: usize,
    pub mean_im: f64,
    /// Mean Im k + κ₀/2.
    pub im_offset: f64,
    /// (Re k_last − Re k_first)/(count − 1) over the ladder.
    pub mean_spacing: f64,
    /// π/(2b).
    pub expected_spacing: f64,
    pub gaps: Vec<f64>,
}

/// Statistics of the resonant poles with 0 < Re k ≤ `re_max`.
pub fn ladder_stats(poles: &[Pole], decay: f64, cutoff: f64, re_max: f64) -> LadderStats {
    let mut ks: Vec<Complex64> = poles
        .iter()
        .filter(|p| p.classification == Some(Classification::Resonant) && p.k.re <= re_max)
        .map(|p| p.k)
        .collect();
    ks.sort_by(|a, b| a.re.total_cmp(&b.re));
    let count = ks.len();
    let mean_im = if count > 0 {
        ks.iter().map(|k| k.im).sum::<f64>() / count as f64
    } else {
        f64::NAN
    };
    let gaps: Vec<f64> = ks.windows(2).map(|w| w[1].re - w[0].re).collect();
    let mean_spacing = if count > 1 {
        (ks[count - 1].re - ks[0].re) / (count - 1) as f64
    } else {
        f64::NAN
    };
    LadderStats {
        cutoff,
        count,
        mean_im,
        im_offset: mean_im + 0.5 * decay,
        mean_spacing,
        expected_spacing: PI / (2.0 * cutoff),
        gaps,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgumentFit {
    pub exponent: f64,
    pub used: usize,
    pub fitted_argument: f64,
    /// −π/(2λ).
    pub expected_argument: f64,
    pub deviation: f64,
    /// Whether the outer poles lie below the line of the expected argument.
    pub below_line: bool,
}

/// Mean argument of the `outer` largest-|k| poles in the fourth quadrant
/// (imaginary axis included).
pub fn fit_pole_argument(poles: &[Pole], exponent: f64, outer: usize) -> Option<ArgumentFit> {
    let mut ks: Vec<Complex64> = poles
        .iter()
        .filter(|p| {
            matches!(
                p.classification,
                Some(Classification::Resonant) | Some(Classification::AntiBound)
            )
        })
        .map(|p| Complex64::new(p.k.re.abs(), p.k.im))
        .collect();
    if ks.is_empty() || outer == 0 {
        return None;
    }
    ks.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    ks.truncate(outer);
    let used = ks.len();
    let fitted = ks.iter().map(|k| k.arg()).sum::<f64>() / used as f64;
    let expected = -PI / (2.0 * exponent);
    Some(ArgumentFit {
        exponent,
        used,
        fitted_argument: fitted,
        expected_argument: expected,
        deviation: fitted - expected,
        below_line: ks.iter().all(|k| k.arg() <= expected + 1e-12),
    })
}

/// (α, β, γ) with k/a₀ = α − iβ and γ = β² − α².
pub fn gaussian_coordinates(k: Complex64, width: f64) -> (f64, f64, f64) {
    let alpha = k.re / width;
    let beta = -k.im / width;
    (alpha, beta, beta * beta - alpha * alpha)
}
