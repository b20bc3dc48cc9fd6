//! Clenshaw-Curtis-Filon quadrature for singular oscillatory Bessel transforms
//!
//! Computes
//!
//! ```text
//! I1[f] = ∫_0^b x^α f(x) J_m(ωx) dx
//! I2[f] = ∫_0^b x^α ln(x) f(x) J_m(ωx) dx
//! ```
//!
//! by interpolating `f` at Clenshaw-Curtis points and integrating the
//! interpolant exactly against the weight through modified moments.

pub mod bounds;
pub mod chebyshev;
pub mod error;
pub mod moments;
pub mod oracle;
pub mod quadrature;
pub mod registry;
pub mod specfun;

pub use error::{Error, Result};
pub use quadrature::{ccf, ccf_auto, hccf, IntegralSpec, Kernel, QuadratureResult};
