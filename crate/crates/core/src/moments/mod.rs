//! Modified moments
//!
//! ```text
//! M_j  = ∫_0^1 x^α T*_j(x) J_m(rx) dx
//! M̃_j = ∫_0^1 x^α ln(x) T*_j(x) J_m(rx) dx
//! ```
//!
//! Both satisfy an order-8 linear recurrence in j (the log one with a right
//! hand side built from M). It is run forward when r ≥ 2J and otherwise
//! solved as a banded boundary value problem.

mod asymptotic;
mod banded;
mod base;
mod recurrence;
mod table;

pub use asymptotic::moment_asymptotic;
pub use banded::BandLu;
pub use base::{base_moment_dg, base_moment_g, initial_log_moments, initial_moments};
pub use recurrence::{coefficients, log_rhs, log_recurrence_residual, recurrence_residual};
pub use table::{log_moments, moment_table, moments_bvp, moments_forward};

use crate::error::{Error, Result};

/// Parameters of a moment family; r = bω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentParams {
    pub r: f64,
    pub m: f64,
    pub alpha: f64,
}

impl MomentParams {
    pub fn new(r: f64, m: f64, alpha: f64) -> Result<MomentParams> {
        let p = MomentParams { r, m, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::Parameter(format!("r = {} must be > 0", self.r)));
        }
        if !(self.m > -1.0 && self.m.is_finite()) {
            return Err(Error::Parameter(format!("m = {} must be > -1", self.m)));
        }
        if !(self.alpha > -1.0 && self.alpha.is_finite()) {
            return Err(Error::Parameter(format!("alpha = {} must be > -1", self.alpha)));
        }
        if !(self.m + self.alpha > -1.0) {
            return Err(Error::Parameter(format!(
                "m + alpha = {} must be > -1",
                self.m + self.alpha
            )));
        }
        Ok(())
    }

    pub(crate) fn shifted(&self, da: f64) -> MomentParams {
        MomentParams {
            alpha: self.alpha + da,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Forward,
    BoundaryValue,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Forward => "forward",
            Regime::BoundaryValue => "bvp",
        })
    }
}

/// Moments M_0..M_J and optionally M̃_0..M̃_J.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub params: MomentParams,
    pub j_max: usize,
    pub m: Vec<f64>,
    pub mlog: Option<Vec<f64>>,
    pub regime: Regime,
    /// Largest relative recurrence residual over the returned range.
    pub residual: f64,
    /// Truncation index of the boundary value solve, if one was used.
    pub k_used: Option<usize>,
}
