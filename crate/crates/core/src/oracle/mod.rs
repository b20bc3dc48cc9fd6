//! Brute-force reference values for the transforms.
//!
//! The algebraic endpoint singularity is removed by x = u^q, the
//! oscillation is resolved by breakpoints every π/(2ω) in x, and each piece
//! is refined by a global adaptive Gauss-Kronrod 15/7 rule. Nothing here
//! touches the moment machinery.

mod gk;
pub mod golden;

use crate::error::{Error, Result};
use crate::quadrature::{IntegralSpec, Kernel};
use crate::specfun::bessel::j_unchecked;
use crate::specfun::gamma::rgamma;

pub use golden::{
    find_record, generate_golden, golden_cases, parse_golden, write_golden, GoldenCase,
    GoldenRecord,
};

/// Largest bω accepted.
pub const MAX_R: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// x = u^q with q = ceil(2/(1 + α + min(m, 0))).
    SqrtSubstitution,
    /// No substitution; dyadic panels toward 0 and an analytic sliver.
    GradedMesh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    pub grading: Grading,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig {
            abs_tol: 1e-17,
            rel_tol: 1e-14,
            max_panels: 400_000,
            grading: Grading::SqrtSubstitution,
        }
    }
}

impl OracleConfig {
    pub fn with_grading(self, grading: Grading) -> OracleConfig {
        OracleConfig { grading, ..self }
    }

    /// Default config with rel_tol taken from `CCF_TOL` when set.
    pub fn from_env() -> OracleConfig {
        let mut c = OracleConfig::default();
        if let Some(t) = std::env::var("CCF_TOL").ok().and_then(|v| v.parse::<f64>().ok()) {
            if t > 0.0 {
                c.rel_tol = t;
            }
        }
        c
    }
}

/// The substitution exponent q.
pub fn substitution_power(alpha: f64, m: f64) -> u32 {
    (2.0 / (1.0 + alpha + m.min(0.0))).ceil().max(1.0) as u32
}

fn oscillation_breaks(b: f64, omega: f64) -> Vec<f64> {
    let w = std::f64::consts::FRAC_PI_2 / omega;
    let n = (b / w).ceil() as usize;
    let mut xs: Vec<f64> = (0..n).map(|k| k as f64 * w).collect();
    xs.push(b);
    xs
}

/// Reference value and error estimate of the integral described by `spec`.
pub fn reference_integral(
    spec: &IntegralSpec,
    f: impl Fn(f64) -> f64,
    cfg: &OracleConfig,
) -> Result<(f64, f64)> {
    spec.validate()?;
    if !(cfg.abs_tol > 0.0 && cfg.rel_tol > 0.0) {
        return Err(Error::Parameter("oracle tolerances must be > 0".into()));
    }
    let r = spec.b * spec.omega;
    if r > MAX_R {
        return Err(Error::Parameter(format!("b*omega = {r} exceeds the oracle limit {MAX_R}")));
    }
    let (a, m, w) = (spec.alpha, spec.m, spec.omega);
    let log = spec.kernel == Kernel::Log;
    let xb = oscillation_breaks(spec.b, w);
    let res = match cfg.grading {
        Grading::SqrtSubstitution => {
            let q = substitution_power(a, m);
            let qf = q as f64;
            let e = qf * (a + 1.0) - 1.0;
            let g = |u: f64| {
                let x = u.powi(q as i32);
                let mut v = qf * u.powf(e) * f(x) * j_unchecked(m, w * x);
                if log {
                    v *= qf * u.ln();
                }
                v
            };
            let mut ub: Vec<f64> = xb.iter().map(|&x| x.powf(1.0 / qf)).collect();
            if log {
                // dyadic grading toward u = 0 for the log factor
                let first = ub[1];
                let extra: Vec<f64> = (1..=60).rev().map(|i| first * 0.5f64.powi(i)).collect();
                ub.splice(1..1, extra);
            }
            gk::integrate(&g, &ub, cfg.abs_tol, cfg.rel_tol, cfg.max_panels)
        }
        Grading::GradedMesh => {
            let beta1 = a + m + 1.0;
            let g = |x: f64| {
                let mut v = x.powf(a) * f(x) * j_unchecked(m, w * x);
                if log {
                    v *= x.ln();
                }
                v
            };
            // sliver [0, eps] from the leading term f(0) (ωx/2)^m / Γ(m+1) x^α [ln x]
            let first = xb[1];
            let target = 1e-3 * cfg.abs_tol;
            let c0 = f(0.0) * (0.5 * w).powf(m) * rgamma(m + 1.0);
            let sliver = |eps: f64| {
                let p = eps.powf(beta1) / beta1;
                if log {
                    c0 * p * (eps.ln() - 1.0 / beta1)
                } else {
                    c0 * p
                }
            };
            let mut eps = first;
            let mut levels = 0;
            // the next order of the sliver is smaller by about ε·max(1, ω²ε)
            while eps > 0.0 && levels < 4000 && (sliver(eps) * eps * (1.0 + w * w * eps)).abs() > target {
                eps *= 0.5;
                levels += 1;
            }
            let mut xs: Vec<f64> = (0..=levels).rev().map(|i| first * 0.5f64.powi(i)).collect();
            xs.extend_from_slice(&xb[2..]);
            let mut r = gk::integrate(&g, &xs, cfg.abs_tol, cfg.rel_tol, cfg.max_panels);
            let s = if eps > 0.0 { sliver(eps) } else { 0.0 };
            r.value += s;
            r.err += (s * eps * (1.0 + w * w * eps)).abs();
            r
        }
    };
    if !res.converged || !res.value.is_finite() {
        return Err(Error::Tolerance {
            value: res.value,
            err_est: res.err,
        });
    }
    Ok((res.value, res.err))
}
