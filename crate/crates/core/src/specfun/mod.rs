//! Complex special-function kernels: log-Gamma, Riemann zeta, Catalan beta
//! and the Macdonald function of complex order.

mod bessel;
mod gamma;
mod hobson;
mod zeta;

pub use bessel::{macdonald_k, macdonald_ladder, KLadder, QuadratureSpec};
pub use gamma::{gamma, ln_cos, ln_gamma, ln_sin};
pub use hobson::hobson_integral;
pub use zeta::{beta_catalan, beta_completion, zeta, zeta_completion};
