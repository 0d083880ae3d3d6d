use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFindConfig {
    pub residual_tolerance: f64,
    pub step_tolerance: f64,
    pub max_iterations: usize,
    /// Central-difference step relative to max(1, |k|).
    pub derivative_step: f64,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        Self {
            residual_tolerance: 1e-10,
            step_tolerance: 1e-12,
            max_iterations: 50,
            derivative_step: 1e-7,
        }
    }
}

impl RootFindConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.residual_tolerance > 0.0
            && self.step_tolerance > 0.0
            && self.derivative_step > 0.0
            && self.max_iterations >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("root-finder tolerances must be positive"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub k: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

const DERIVATIVE_FLOOR: f64 = 1e-290;

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Newton iteration with a central-difference derivative. Succeeds only when
/// the last step is below `step_tolerance·max(1,|k|)` and `|f(k)|` is below
/// `residual_tolerance`.
pub fn newton_complex<F>(mut f: F, seed: Complex64, cfg: &RootFindConfig) -> Result<Root>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    cfg.validate()?;
    let mut k = seed;
    let mut fk = f(k)?;
    if !finite(fk) {
        return Err(Error::NonFinite(k));
    }
    if fk == Complex64::new(0.0, 0.0) {
        return Ok(Root {
            k,
            residual: 0.0,
            iterations: 0,
        });
    }
    for it in 1..=cfg.max_iterations {
        let h = cfg.derivative_step * k.norm().max(1.0);
        let d = (f(k + h)? - f(k - h)?) / (2.0 * h);
        if !finite(d) || d.norm() < DERIVATIVE_FLOOR {
            return Err(Error::DerivativeUnderflow(k));
        }
        let step = fk / d;
        k -= step;
        fk = f(k)?;
        if !finite(fk) {
            return Err(Error::NonFinite(k));
        }
        let residual = fk.norm();
        let small_step = step.norm() <= cfg.step_tolerance * k.norm().max(1.0);
        if residual == 0.0 || (small_step && residual <= cfg.residual_tolerance) {
            return Ok(Root {
                k,
                residual,
                iterations: it,
            });
        }
    }
    Err(Error::MaxIterations {
        iterations: cfg.max_iterations,
        at: k,
        residual: fk.norm(),
    })
}
