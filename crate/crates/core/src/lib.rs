//! High-precision evaluation of the conformal Casimir energy contributed by
//! elliptic fixed points on compact hyperbolic orbifolds.
//!
//! The elliptic spectral zeta function is written through two-dimensional
//! Barnes zeta functions ([`barnes`]), which are reduced to finitely many
//! Hurwitz zeta functions ([`hurwitz`]) and summed by Euler–Maclaurin at a
//! configurable working precision ([`numkernel`]). The [`casimir`] module
//! assembles energies and surface reports; [`oracle`] holds the independent
//! quadrature and brute-force engines used to verify the continuation.

pub mod error;
pub mod barnes;
pub mod casimir;
pub mod hurwitz;
pub mod numkernel;
pub mod oracle;

pub use error::{Error, Result};
pub use numkernel::{real, with_working_digits, working_digits, Real};
