use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma function has a pole at z = {0:.6e}")]
    GammaPole(Complex64),
    #[error("power series did not converge within {terms} terms")]
    SeriesNonConvergence { terms: usize },
    #[error("Newton iteration stalled after {iterations} iterations at k = {at:.6e} (|f| = {residual:e})")]
    MaxIterations {
        iterations: usize,
        at: Complex64,
        residual: f64,
    },
    #[error("derivative underflow at k = {0:.6e}")]
    DerivativeUnderflow(Complex64),
    #[error("residual has a pole at k = {0:.6e}")]
    ResidualPole(Complex64),
    #[error("non-finite value encountered at k = {0:.6e}")]
    NonFinite(Complex64),
    #[error("adaptive quadrature did not converge")]
    QuadratureNonConvergence,
    #[error("invalid potential: {0}")]
    InvalidPotential(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(
        "Jost coefficients exceeded the overflow guard at x = {x} (Im k = {im_k}); scan shallower or shorten the path"
    )]
    Overflow { x: f64, im_k: f64 },
    #[error("integrator exceeded {steps} steps")]
    StepLimit { steps: usize },
    #[error("integrator step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("ill-conditioned input: {0}")]
    IllConditioned(&'static str),
}
