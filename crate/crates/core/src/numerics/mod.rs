//! Numerical kernels shared by every other module.

pub mod grid;
pub mod logscaled;
pub mod ode;
pub mod quad;
pub mod special;
pub mod stencil;
pub mod units;

pub use grid::{Grid, GridDescriptor};
pub use logscaled::{LogScaledReal, ScaledComplex};
pub use ode::{integrate_to_points, ode_integrate, OdeOptions, OdeSolution, Trajectory};
pub use quad::{adaptive_quad, integrate, QuadEstimate, QuadOptions};
pub use special::{
    dawson, dawson_derivative, erfcx, erfi_asymptotic, gauss_integral_upper, gauss_integral_upper_scaled,
    growing_integral, AsymptoticSum, SQRT_PI,
};
pub use stencil::{first_derivative, second_derivative, STENCIL_HALF_WIDTH};
pub use units::UnitScale;
