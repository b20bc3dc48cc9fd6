//! Special functions: gamma and digamma, Bessel functions of real order,
//! the hypergeometric function 1F2 with parameter derivatives, and the
//! Lommel function S_{μ,ν}.

pub(crate) mod bessel;
pub(crate) mod gamma;
pub(crate) mod hyp;
pub(crate) mod lommel;
pub(crate) mod wide;

pub use bessel::{
    bessel_j, bessel_j_hankel, bessel_j_series, bessel_jy, bessel_y, bessel_y_hankel,
};
pub use gamma::{cos_pi, digamma, gamma, lgamma, rgamma, rgamma_deriv, sin_pi};
pub use hyp::{hyp0f1, hyp1f2, hyp1f2_dparam, hyp1f2_with, Param};
pub use lommel::{
    lommel_s, lommel_s_asymptotic, lommel_s_dmu, lommel_s_dmu_asymptotic, lommel_s_dmu_small,
    lommel_s_small,
};

/// Tolerances shared by the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_terms: 1_000_000,
        }
    }
}

/// Outcome of a summed series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the last term added.
    pub tail_estimate: f64,
    /// Sum of term magnitudes; `abs_sum / |value|` measures cancellation.
    pub abs_sum: f64,
}

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_EPS: f64 = 1e-8;

pub(crate) fn near_nonpositive_int(z: f64) -> bool {
    z <= POLE_EPS && (z - z.round()).abs() < POLE_EPS
}
