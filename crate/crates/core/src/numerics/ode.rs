use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_steps: 200_000,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Dormand–Prince 5(4) stepper for complex systems of fixed dimension, with
/// per-component error control. State persists between calls to
/// [`Dopri5::advance_to`], so a path can be integrated piecewise.
#[derive(Debug, Clone)]
pub struct Dopri5<const N: usize> {
    pub t: f64,
    pub y: [Complex64; N],
    h: f64,
    cfg: OdeConfig,
    steps: usize,
}

impl<const N: usize> Dopri5<N> {
    pub fn new(t0: f64, y0: [Complex64; N], cfg: OdeConfig) -> Self {
        Self {
            t: t0,
            y: y0,
            h: 0.0,
            cfg,
            steps: 0,
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn error_norm(&self, y: &[Complex64; N], y_new: &[Complex64; N], err: &[Complex64; N]) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            let sc = self.cfg.abs_tol + self.cfg.rel_tol * y[i].norm().max(y_new[i].norm());
            let e = err[i].norm() / sc;
            acc += e * e;
        }
        (acc / N as f64).sqrt()
    }

    /// Integrates to `t_end` (either direction). `guard` runs after every
    /// accepted step and may abort the integration.
    pub fn advance_to<F, G>(&mut self, t_end: f64, mut f: F, mut guard: G) -> Result<()>
    where
        F: FnMut(f64, &[Complex64; N]) -> [Complex64; N],
        G: FnMut(f64, &[Complex64; N]) -> Result<()>,
    {
        let span = t_end - self.t;
        if span == 0.0 {
            return Ok(());
        }
        let dir = span.signum();
        if self.h == 0.0 || self.h.signum() != dir {
            self.h = dir * (1e-3 * span.abs()).clamp(1e-8, 1e-2);
        }
        let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
        k[0] = f(self.t, &self.y);
        loop {
            let remaining = t_end - self.t;
            if remaining * dir <= 0.0 {
                return Ok(());
            }
            let last = (self.h * dir) >= remaining * dir;
            let h = if last { remaining } else { self.h };
            if self.t + h == self.t {
                return Err(Error::StepUnderflow { t: self.t });
            }
            for s in 1..7 {
                let mut ys = self.y;
                for (i, v) in ys.iter_mut().enumerate() {
                    let mut inc = Complex64::new(0.0, 0.0);
                    for (j, kj) in k.iter().enumerate().take(s) {
                        if A[s][j] != 0.0 {
                            inc += A[s][j] * kj[i];
                        }
                    }
                    *v += h * inc;
                }
                k[s] = f(self.t + C[s] * h, &ys);
            }
            // stage 7 is evaluated at the fifth-order solution (FSAL)
            let mut y_new = self.y;
            for (i, v) in y_new.iter_mut().enumerate() {
                let mut inc = Complex64::new(0.0, 0.0);
                for j in 0..6 {
                    inc += A[6][j] * k[j][i];
                }
                *v += h * inc;
            }
            let k7 = f(self.t + h, &y_new);
            let mut err = [Complex64::new(0.0, 0.0); N];
            for (i, e) in err.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..6 {
                    acc += E[j] * k[j][i];
                }
                acc += E[6] * k7[i];
                *e = h * acc;
            }
            let en = self.error_norm(&self.y, &y_new, &err);
            self.steps += 1;
            if self.steps > self.cfg.max_steps {
                return Err(Error::StepLimit {
                    steps: self.cfg.max_steps,
                });
            }
            if en.is_finite() && en <= 1.0 {
                self.t = if last { t_end } else { self.t + h };
                self.y = y_new;
                k[0] = k7;
                guard(self.t, &self.y)?;
                let fac = if en == 0.0 {
                    5.0
                } else {
                    (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
                };
                if !last {
                    self.h = h * fac;
                } else {
                    self.h = self.h.abs().max(h.abs() * fac) * dir;
                }
            } else {
                let fac = if en.is_finite() {
                    (0.9 * en.powf(-0.2)).clamp(0.1, 0.9)
                } else {
                    0.1
                };
                self.h = h * fac;
            }
        }
    }
}
