//! Multiplicative calculus on the Riemann surface of the logarithm.
//!
//! Points of the surface are pairs `(r, θ)` with `r > 0` and an unreduced
//! argument `θ ∈ ℝ`, so `exp` is a bijection from ℂ onto the surface and
//! `log` is single valued. On top of this the crate provides multiplicative
//! finite quotients, phase unwrapping and Hankel-function lifting,
//! multiplicative vectors with the `*`-norm, a multiplicative leapfrog for
//! the advection equation and exponential-polynomial interpolation.

pub mod bessel;
pub mod calculus;
pub mod error;
pub mod interp;
pub mod lifting;
pub mod mvector;
pub mod pde;
pub mod surface;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use mvector::{NormSpec, SurfaceVector};
pub use surface::{exp_lift, ClosurePoint, SurfacePoint};
