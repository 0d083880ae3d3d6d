//! Pole search through the Jost coefficients 𝓕±(k; x).
//!
//! Writing φ = (𝓕₋e^{ikx} − 𝓕₊e^{−ikx})/(2ik) with the gauge
//! φ′ = (𝓕₋e^{ikx} + 𝓕₊e^{−ikx})/2 turns the Schrödinger equation into
//!
//!   𝓕₊′ = V/(2ik)·(𝓕₋e^{2ikx} − 𝓕₊),   𝓕₋′ = V/(2ik)·(𝓕₋ − 𝓕₊e^{−2ikx}),
//!
//! started from 𝓕₊(0) = −𝓕₋(0) = −ik (even) or 𝓕₊(0) = 𝓕₋(0) = 1 (odd).
//! The Jost function is 𝓕₊(k) = lim 𝓕₊(k; x); its zeros are the poles.
//!
//! Below the real axis e^{±2ikx} grows and a straight integration along real
//! x loses every digit once |Im k|·x is large. Two devices keep the method
//! usable deep in the lower half plane:
//!
//! * Gaussian-type wells are analytic, so the path may be the ray x = t·e^{iθ}
//!   inside the sector where V still decays; 𝓕₊(k) does not depend on θ and
//!   θ is picked per k to minimise the exponential growth along the path.
//! * For sums of exponentials the tail beyond a matching point X is solved
//!   exactly by the series f₊ = e^{ikx}Σ C_m e^{−s_m x}, and 𝓕₊(k) is the
//!   Wronskian of f₊ with φ at X.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::born::sort_poles;
use crate::numerics::{grid_scan, newton_complex, recip_gamma, DensityMap, Dopri5, OdeConfig, Region, RootFindConfig};
use crate::potentials::ExpTerm;
use crate::{Error, Parity, Pole, Potential, Provenance, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Integration path in the complex x plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathPolicy {
    /// Real x only.
    Real,
    /// Rotate analytic super-exponential wells by the angle of least growth.
    Auto,
    /// Fixed ray angle (radians); must stay inside the sector where V decays.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostConfig {
    pub x_max: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// |𝓕±| above this aborts the integration.
    pub overflow_guard: f64,
    pub path: PathPolicy,
    /// Envelope level at which the exact exponential tail replaces the ODE.
    pub tail_match: f64,
    pub max_steps: usize,
}

impl JostConfig {
    /// x_max = max(15/scale, support radius at 1e−12).
    pub fn for_potential(p: &Potential) -> Self {
        let x_max = (15.0 / p.scale()).max(p.support_radius(1e-12));
        Self {
            x_max,
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            overflow_guard: 1e150,
            path: PathPolicy::Auto,
            tail_match: 1e-3,
            max_steps: 200_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.x_max > 0.0
            && self.x_max.is_finite()
            && self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.overflow_guard > 1.0
            && self.tail_match > 0.0
            && self.max_steps > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("Jost configuration values must be positive"))
        }
    }

    fn ode(&self) -> OdeConfig {
        OdeConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_steps: self.max_steps,
        }
    }
}

/// Root-finder settings matched to the integrator noise floor.
pub fn default_root_config() -> RootFindConfig {
    RootFindConfig {
        residual_tolerance: 1e-8,
        step_tolerance: 1e-10,
        max_iterations: 60,
        derivative_step: 1e-6,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostCoefficients {
    pub f_plus: Complex64,
    pub f_minus: Complex64,
    /// Path parameter t; the position is t·e^{i·angle}.
    pub x: f64,
    pub angle: f64,
}

impl JostCoefficients {
    pub fn position(&self) -> Complex64 {
        Complex64::from_polar(self.x, self.angle)
    }

    pub fn phi(&self, k: Complex64) -> Complex64 {
        let e = (I * k * self.position()).exp();
        (self.f_minus * e - self.f_plus / e) / (2.0 * I * k)
    }

    pub fn phi_prime(&self, k: Complex64) -> Complex64 {
        let e = (I * k * self.position()).exp();
        0.5 * (self.f_minus * e + self.f_plus / e)
    }
}

fn initial(parity: Parity, k: Complex64) -> [Complex64; 2] {
    match parity {
        Parity::Even => [-I * k, I * k],
        Parity::Odd => [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
    }
}

fn check_k(k: Complex64) -> Result<()> {
    if k == ZERO {
        return Err(Error::InvalidArgument("k = 0 is excluded"));
    }
    if !k.re.is_finite() || !k.im.is_finite() {
        return Err(Error::NonFinite(k));
    }
    Ok(())
}

/// Decay exponent λ of V ~ exp(−|x|^λ) for the analytic super-exponential families.
fn sector_exponent(p: &Potential) -> Option<f64> {
    match p {
        Potential::GaussianSum(_) => Some(2.0),
        Potential::SuperGaussian { exponent, .. } if *exponent > 1.0 => Some(*exponent),
        _ => None,
    }
}

/// Ray angle used for wave number k under the configured policy.
pub fn path_angle(p: &Potential, k: Complex64, cfg: &JostConfig) -> Result<f64> {
    let Some(lambda) = sector_exponent(p) else {
        return Ok(0.0);
    };
    let limit = PI / (2.0 * lambda);
    match cfg.path {
        PathPolicy::Real => Ok(0.0),
        PathPolicy::Fixed(theta) => {
            if theta.abs() < limit {
                Ok(theta)
            } else {
                Err(Error::InvalidArgument("path angle outside the sector where V decays"))
            }
        }
        PathPolicy::Auto => {
            let cap = 0.8 * limit;
            let phi = k.arg();
            let cost = |theta: f64| {
                (phi + theta).sin().abs().powf(lambda / (lambda - 1.0))
                    / (lambda * theta).cos().powf(1.0 / (lambda - 1.0))
            };
            let steps = 80;
            let mut best = (cost(0.0), 0.0f64);
            for i in 0..=steps {
                let theta = -cap + 2.0 * cap * i as f64 / steps as f64;
                let c = cost(theta);
                if c < best.0 * (1.0 - 1e-12) || (c <= best.0 && theta.abs() < best.1.abs()) {
                    best = (c, theta);
                }
            }
            Ok(best.1)
        }
    }
}

/// Path length that reaches the same envelope level as x_max on the real axis.
fn path_end(p: &Potential, cfg: &JostConfig, angle: f64) -> f64 {
    match sector_exponent(p) {
        Some(lambda) if angle != 0.0 => cfg.x_max / (lambda * angle).cos().powf(1.0 / lambda),
        _ => cfg.x_max,
    }
}

/// Integrates along the ray of angle `angle`, returning the state at each
/// requested path parameter (ascending, non-negative).
fn integrate_path(
    p: &Potential,
    parity: Parity,
    k: Complex64,
    cfg: &JostConfig,
    angle: f64,
    ts: &[f64],
) -> Result<Vec<JostCoefficients>> {
    check_k(k)?;
    cfg.validate()?;
    let u = Complex64::from_polar(1.0, angle);
    let cutoff = match p {
        Potential::CutoffExponential { cutoff, .. } => Some(*cutoff),
        _ => None,
    };
    let two_ik = 2.0 * I * k;
    let rhs = |t: f64, y: &[Complex64; 2]| {
        let x = t * u;
        let v = p.evaluate_complex(x);
        if v == ZERO {
            return [ZERO, ZERO];
        }
        let c = u * v / two_ik;
        let ph = two_ik * x;
        let (up, down) = if ph.re.abs() > 600.0 {
            // form V·e^{±2ikx} in the log domain before it overflows
            let lv = v.ln();
            ((ph + lv).exp() / v, (lv - ph).exp() / v)
        } else {
            let e = ph.exp();
            (e, 1.0 / e)
        };
        [c * (y[1] * up - y[0]), c * (y[1] - y[0] * down)]
    };
    let guard_level = cfg.overflow_guard;
    let guard = |t: f64, y: &[Complex64; 2]| {
        let bad = y.iter().any(|z| !(z.norm() <= guard_level));
        if bad {
            Err(Error::Overflow { x: t, im_k: k.im })
        } else {
            Ok(())
        }
    };
    let mut solver = Dopri5::new(0.0, initial(parity, k), cfg.ode());
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let target = match cutoff {
            Some(b) => t.min(b),
            None => t,
        };
        solver.advance_to(target, rhs, guard)?;
        out.push(JostCoefficients {
            f_plus: solver.y[0],
            f_minus: solver.y[1],
            x: t,
            angle,
        });
    }
    Ok(out)
}

/// Raw ODE state at the end of the path (x_max on the real axis, or the
/// equivalent point on a rotated ray).
pub fn integrate_jost(p: &Potential, parity: Parity, k: Complex64, cfg: &JostConfig) -> Result<JostCoefficients> {
    p.validate()?;
    let angle = path_angle(p, k, cfg)?;
    let end = path_end(p, cfg, angle);
    Ok(integrate_path(p, parity, k, cfg, angle, &[end])?[0])
}

/// States at path parameters `ts` along the ray chosen for k.
pub fn jost_samples(
    p: &Potential,
    parity: Parity,
    k: Complex64,
    cfg: &JostConfig,
    ts: &[f64],
) -> Result<Vec<JostCoefficients>> {
    p.validate()?;
    let angle = path_angle(p, k, cfg)?;
    integrate_path(p, parity, k, cfg, angle, ts)
}

/// Coefficients C_m of the exact tail solution f₊ = e^{ikx}Σ C_m e^{−s_m x},
/// s_m = Σ m_j κ_j, summed at x = X. Returns (Σ C_m e^{−s_m X}(1 − s_m/2ik),
/// Σ C_m e^{−s_m X} s_m/2ik).
fn tail_sums(terms: &[ExpTerm], k: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    let two_ik = 2.0 * I * k;
    let mut a = Complex64::new(1.0, 0.0);
    let mut b = ZERO;
    let mut shell: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    shell.insert(vec![0; terms.len()], Complex64::new(1.0, 0.0));
    let mut quiet = 0;
    for _order in 1..=60 {
        let mut next: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for m in shell.keys() {
            for j in 0..terms.len() {
                let mut idx = m.clone();
                idx[j] += 1;
                if next.contains_key(&idx) {
                    continue;
                }
                let s: Complex64 = idx.iter().zip(terms).map(|(&n, t)| n as f64 * t.decay).sum();
                let gap = two_ik - s;
                if gap.norm() <= 1e-13 * s.norm() {
                    return Err(Error::ResidualPole(k));
                }
                let mut acc = ZERO;
                for (i, t) in terms.iter().enumerate() {
                    if idx[i] > 0 {
                        let mut prev = idx.clone();
                        prev[i] -= 1;
                        if let Some(c) = shell.get(&prev) {
                            acc += t.strength * c;
                        }
                    }
                }
                next.insert(idx, acc / (s * gap));
            }
        }
        let mut da = ZERO;
        let mut db = ZERO;
        for (m, c) in next.iter() {
            let s: Complex64 = m.iter().zip(terms).map(|(&n, t)| n as f64 * t.decay).sum();
            let w = c * (-s * x).exp();
            da += w * (1.0 - s / two_ik);
            db += w * s / two_ik;
        }
        a += da;
        b += db;
        if da.norm() <= 1e-17 * a.norm().max(1e-300) && db.norm() <= 1e-17 * b.norm().max(1e-300) {
            quiet += 1;
            if quiet >= 2 {
                return Ok((a, b));
            }
        } else {
            quiet = 0;
        }
        shell = next;
    }
    Err(Error::SeriesNonConvergence { terms: 60 })
}

/// The Jost function 𝓕₊(k) (limit x → ∞ of the coefficient).
pub fn jost_function(p: &Potential, parity: Parity, k: Complex64, cfg: &JostConfig) -> Result<Complex64> {
    p.validate()?;
    let p = p.canonical();
    match &p {
        Potential::ExponentialSum(terms) => {
            check_k(k)?;
            let live: Vec<ExpTerm> = terms.iter().copied().filter(|t| t.strength != 0.0).collect();
            if live.is_empty() {
                return Ok(initial(parity, k)[0]);
            }
            let x = cfg.x_max.min(p.support_radius(cfg.tail_match));
            let state = integrate_path(&p, parity, k, cfg, 0.0, &[x])?[0];
            let (a, b) = tail_sums(&live, k, x)?;
            // 𝓕₊ = W(f₊, φ) at X
            let lead = (2.0 * I * k * x).exp();
            Ok(state.f_plus * a + state.f_minus * lead * b)
        }
        _ => Ok(integrate_jost(&p, parity, k, cfg)?.f_plus),
    }
}

/// Residual used for pole search: 𝓕₊(k), multiplied for exponential tails by
/// Π_j 1/Γ(1 − 2ik/κ_j), which cancels the poles of 𝓕₊ at 2ik = nκ_j
/// without moving any zero.
pub fn jost_residual(p: &Potential, parity: Parity, k: Complex64, cfg: &JostConfig) -> Result<Complex64> {
    let canon = p.canonical();
    let Potential::ExponentialSum(terms) = &canon else {
        return jost_function(p, parity, k, cfg);
    };
    let factor = |k: Complex64| -> Complex64 {
        terms
            .iter()
            .filter(|t| t.strength != 0.0)
            .map(|t| recip_gamma(1.0 - 2.0 * I * k / t.decay))
            .product()
    };
    match jost_function(&canon, parity, k, cfg) {
        Ok(f) => Ok(f * factor(k)),
        Err(Error::ResidualPole(_)) => {
            // the product is finite there; step off the removable point
            let k2 = k + 1e-9 * canon.scale() * Complex64::new(1.0, 1.0);
            Ok(jost_function(&canon, parity, k2, cfg)? * factor(k2))
        }
        Err(e) => Err(e),
    }
}

/// Largest drift of W(φ_σ, φ_{−σ}) over 64 points of the path relative to its
/// value at x = 0 (which is σ).
pub fn wronskian_check(p: &Potential, parity: Parity, k: Complex64, cfg: &JostConfig) -> Result<f64> {
    p.validate()?;
    let angle = path_angle(p, k, cfg)?;
    let end = path_end(p, cfg, angle);
    let ts: Vec<f64> = (0..64).map(|i| end * i as f64 / 63.0).collect();
    let a = integrate_path(p, parity, k, cfg, angle, &ts)?;
    let b = integrate_path(p, parity.flip(), k, cfg, angle, &ts)?;
    let w = |i: usize| a[i].phi(k) * b[i].phi_prime(k) - b[i].phi(k) * a[i].phi_prime(k);
    let w0 = w(0);
    Ok((1..ts.len()).map(|i| (w(i) - w0).norm()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedFailure {
    pub seed: Complex64,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleSearch {
    pub poles: Vec<Pole>,
    pub failures: Vec<SeedFailure>,
    pub map: DensityMap,
}

fn axis_tol(p: &Potential) -> f64 {
    1e-6 * p.scale()
}

/// Newton refinement of one seed on [`jost_residual`].
pub fn refine_seed(
    p: &Potential,
    parity: Parity,
    seed: Complex64,
    cfg: &JostConfig,
    root_cfg: &RootFindConfig,
) -> Result<Pole> {
    let root = newton_complex(|k| jost_residual(p, parity, k, cfg), seed, root_cfg)?;
    if root.k.norm() < 1e-8 * p.scale() {
        return Err(Error::InvalidArgument("seed converged to the threshold k = 0"));
    }
    Ok(Pole::new(root.k, parity, root.residual, Provenance::Jost, axis_tol(p)))
}

/// Deduplicates refined seeds (in seed order) and drops roots that left the
/// region by more than `margin`.
pub fn merge_refined(
    p: &Potential,
    region: &Region,
    margin: f64,
    refined: Vec<(Complex64, Result<Pole>)>,
) -> (Vec<Pole>, Vec<SeedFailure>) {
    let mut poles: Vec<Pole> = Vec::new();
    let mut failures = Vec::new();
    let merge = 1e-8 * p.scale();
    for (seed, r) in refined {
        match r {
            Ok(pole) if !region.contains(pole.k, margin) => failures.push(SeedFailure {
                seed,
                error: Error::InvalidArgument("refined root left the scan region"),
            }),
            Ok(pole) => {
                if !poles
                    .iter()
                    .any(|q| (q.k - pole.k).norm() <= merge.max(1e-8 * pole.k.norm()))
                {
                    poles.push(pole);
                }
            }
            Err(error) => failures.push(SeedFailure { seed, error }),
        }
    }
    sort_poles(&mut poles);
    (poles, failures)
}

/// Density scan of |𝓕₊| followed by Newton refinement of every local minimum.
pub fn find_poles(
    p: &Potential,
    parity: Parity,
    region: &Region,
    resolution: (usize, usize),
    cfg: &JostConfig,
    root_cfg: &RootFindConfig,
) -> Result<PoleSearch> {
    p.validate()?;
    cfg.validate()?;
    let (nx, ny) = resolution;
    let map = grid_scan(|k| jost_residual(p, parity, k, cfg), region, nx, ny)?;
    let refined = map
        .seeds
        .iter()
        .map(|s| (s.k, refine_seed(p, parity, s.k, cfg, root_cfg)))
        .collect();
    let margin = cell_margin(region, nx, ny);
    let (poles, failures) = merge_refined(p, region, margin, refined);
    Ok(PoleSearch { poles, failures, map })
}

/// One grid cell: how far a refined root may sit outside the scanned rectangle.
pub fn cell_margin(region: &Region, nx: usize, ny: usize) -> f64 {
    let dx = (region.re_max - region.re_min) / (nx.max(2) - 1) as f64;
    let dy = (region.im_max - region.im_min) / (ny.max(2) - 1) as f64;
    dx.max(dy)
}

/// Adds the refined mirror −conj(k) of every off-axis pole that lacks one.
pub fn complete_pairs(
    p: &Potential,
    poles: &[Pole],
    cfg: &JostConfig,
    root_cfg: &RootFindConfig,
) -> (Vec<Pole>, Vec<SeedFailure>) {
    let tol = axis_tol(p);
    let mut out: Vec<Pole> = poles.to_vec();
    let mut failures = Vec::new();
    for q in poles {
        if q.k.re.abs() < tol {
            continue;
        }
        let target = -q.k.conj();
        let near = |o: &Pole| o.parity == q.parity && (o.k - target).norm() <= 1e-6 * p.scale().max(target.norm());
        if out.iter().any(near) {
            continue;
        }
        match refine_seed(p, q.parity, target, cfg, root_cfg) {
            Ok(m) if (m.k - target).norm() <= 1e-6 * p.scale().max(target.norm()) => out.push(m),
            Ok(_) => failures.push(SeedFailure {
                seed: target,
                error: Error::InvalidArgument("mirror seed converged elsewhere"),
            }),
            Err(error) => failures.push(SeedFailure { seed: target, error }),
        }
    }
    sort_poles(&mut out);
    (out, failures)
}
