//! Independent verification engines. Every continued value produced by
//! [`crate::casimir`] and [`crate::barnes`] has a directly computable
//! counterpart here: quadrature of the heat kernel and of the Mellin-strip
//! integrals, the conical image-sum identity, and brute-force lattice sums.

pub mod brute;
pub mod heat;
pub mod quadrature;
pub mod strip;

pub use brute::{brute_barnes_sum, brute_barnes_sum_ds, BruteKind, BruteSum};
pub use heat::{elliptic_bracket_integrand, heat_kernel_kp, image_sum_lhs, image_sum_rhs, HeatKernelForm};
pub use quadrature::{tanh_sinh, QuadratureConfig, QuadratureResult};
pub use strip::{quad_elliptic_zeta_strip, quad_identity_zeta_strip};
