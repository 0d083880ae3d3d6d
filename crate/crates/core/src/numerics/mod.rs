//! Special functions, root finding and integration on complex arguments.

mod bessel;
mod gamma;
mod grid;
mod ode;
mod quad;
mod roots;

pub use bessel::{
    bessel_j, bessel_j_capped, bessel_j_derivative, bessel_j_derivative_scaled, bessel_j_scaled, DEFAULT_MAX_TERMS,
};
pub use gamma::{complex_gamma, recip_gamma, sin_pi};
pub use grid::{grid_points, grid_scan, DensityMap, Region, Seed};
pub use ode::{Dopri5, OdeConfig};
pub use quad::{integrate_adaptive, QuadConfig};
pub use roots::{newton_complex, Root, RootFindConfig};
