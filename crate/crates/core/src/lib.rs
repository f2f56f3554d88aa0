//! Steklov spectra of star-shaped domains on rotationally symmetric surfaces.
//!
//! The crate computes Steklov eigenvalues of domains `r < R(θ)` on warped
//! surfaces `dr² + h(r)² dθ²` and on the paraboloid `z = x² + y²`, evaluates
//! sharp lower bounds for every eigenvalue in terms of the largest coordinate
//! ball `B(R_m)` inside the domain, and checks those bounds numerically.
//!
//! Module map:
//!
//! * [`numerics`]: ODE integration, quadrature, dense symmetric eigensolvers.
//! * [`geometry`]: warp functions, surface metrics, star domains, boundary frames.
//! * [`radial`]: Riccati shooting for separated harmonic modes and ball spectra.
//! * [`dtn_solver`]: Galerkin Dirichlet-to-Neumann solver on a harmonic basis.
//! * [`bounds`]: closed-form lower bounds.
//! * [`verify`]: the verification harness.
//! * [`oracle`]: an independent finite-difference Steklov solver used for cross-checks.
//! * [`config`] and [`cli`]: the `steklov` command-line front end.

pub mod bounds;
pub mod cli;
pub mod config;
pub mod dtn_solver;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod oracle;
pub mod radial;
pub mod verify;

pub use error::{Error, Result};
