//! CCF and HCCF integrators.
//!
//! Both reduce to a dot product of interpolant coefficients with moments at
//! r = bω:
//!
//! ```text
//! Plain: b^{α+1} Σ c_j M_j
//! Log:   b^{α+1} Σ c_j (ln b · M_j + M̃_j)
//! ```

use std::fmt;
use std::str::FromStr;

use crate::chebyshev::{cc_points, cheb_fit, hermite_fit};
use crate::error::{Error, Result};
use crate::moments::{moment_table, MomentParams, MomentTable, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// x^α J_m(ωx)
    Plain,
    /// x^α ln(x) J_m(ωx)
    Log,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Plain => "plain",
            Kernel::Log => "log",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kernel> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Kernel::Plain),
            "log" => Ok(Kernel::Log),
            _ => Err(Error::Parameter(format!("unknown kernel '{s}'"))),
        }
    }
}

/// One integral ∫_0^b x^α [ln x] f(x) J_m(ωx) dx, minus f.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    pub b: f64,
    pub alpha: f64,
    pub m: f64,
    pub omega: f64,
    pub kernel: Kernel,
}

impl IntegralSpec {
    pub fn new(b: f64, alpha: f64, m: f64, omega: f64, kernel: Kernel) -> Result<IntegralSpec> {
        let s = IntegralSpec {
            b,
            alpha,
            m,
            omega,
            kernel,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::Parameter(format!("b = {} must be > 0", self.b)));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::Parameter(format!("omega = {} must be > 0", self.omega)));
        }
        self.moment_params().validate()
    }

    /// Moment parameters at r = bω.
    pub fn moment_params(&self) -> MomentParams {
        MomentParams {
            r: self.b * self.omega,
            m: self.m,
            alpha: self.alpha,
        }
    }

    pub fn with_omega(&self, omega: f64) -> IntegralSpec {
        IntegralSpec { omega, ..*self }
    }

    pub fn with_kernel(&self, kernel: Kernel) -> IntegralSpec {
        IntegralSpec { kernel, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub n_used: usize,
    pub s_used: usize,
    pub regime: Regime,
    /// Largest relative recurrence residual of the moment table.
    pub residual: f64,
    /// Condition estimate of the interpolation step (1 for plain CCF).
    pub condition: f64,
    /// Last |value(2N) − value(N)| from [`ccf_auto`].
    pub change: Option<f64>,
}

fn assemble(spec: &IntegralSpec, coeffs: &[f64]) -> Result<(f64, MomentTable)> {
    spec.validate()?;
    let j = coeffs.len() - 1;
    let p = spec.moment_params();
    let table = moment_table(&p, j, spec.kernel == Kernel::Log, None)?;
    let scale = spec.b.powf(spec.alpha + 1.0);
    let sum = match spec.kernel {
        Kernel::Plain => dot(coeffs, &table.m),
        Kernel::Log => {
            let lb = spec.b.ln();
            let ml = table.mlog.as_ref().expect("log table");
            let a = dot(coeffs, &table.m);
            let c = dot(coeffs, ml);
            lb * a + c
        }
    };
    Ok((scale * sum, table))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// CCF from samples of f at `cc_points(n, b)`.
pub fn ccf(spec: &IntegralSpec, samples: &[f64], n: usize) -> Result<QuadratureResult> {
    if n < 1 || samples.len() != n + 1 {
        return Err(Error::Parameter(format!(
            "ccf with N = {n} needs {} samples, got {}",
            n + 1,
            samples.len()
        )));
    }
    let interp = cheb_fit(samples, spec.b)?;
    let (value, table) = assemble(spec, &interp.coeffs)?;
    Ok(QuadratureResult {
        value,
        n_used: n,
        s_used: 0,
        regime: table.regime,
        residual: table.residual,
        condition: 1.0,
        change: None,
    })
}

/// HCCF with endpoint derivatives of orders 0..=s at 0 and b.
pub fn hccf(
    spec: &IntegralSpec,
    samples: &[f64],
    derivs0: &[f64],
    derivsb: &[f64],
    n: usize,
    s: usize,
) -> Result<QuadratureResult> {
    let interp = hermite_fit(samples, derivs0, derivsb, n, s, spec.b)?;
    let (value, table) = assemble(spec, &interp.coeffs)?;
    Ok(QuadratureResult {
        value,
        n_used: n,
        s_used: s,
        regime: table.regime,
        residual: table.residual,
        condition: interp.condition,
        change: None,
    })
}

/// Samples f at the Clenshaw-Curtis points of [0, b] and runs [`ccf`].
pub fn ccf_fn(spec: &IntegralSpec, f: impl Fn(f64) -> f64, n: usize) -> Result<QuadratureResult> {
    if n < 1 {
        return Err(Error::Parameter("N must be >= 1".into()));
    }
    let xs = cc_points(n, spec.b);
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    ccf(spec, &ys, n)
}

pub const AUTO_N_START: usize = 8;
pub const AUTO_N_CAP: usize = 1024;

/// Doubles N from 8 until successive values agree to `tol · max(1, |v|)`.
pub fn ccf_auto(spec: &IntegralSpec, f: impl Fn(f64) -> f64, tol: f64) -> Result<QuadratureResult> {
    if !(tol >= 1e-12) {
        return Err(Error::Parameter(format!("target tolerance {tol} must be >= 1e-12")));
    }
    let mut prev = ccf_fn(spec, &f, AUTO_N_START)?;
    let mut n = AUTO_N_START;
    loop {
        n *= 2;
        let mut cur = ccf_fn(spec, &f, n)?;
        let d = (cur.value - prev.value).abs();
        cur.change = Some(d);
        if d <= tol * cur.value.abs().max(1.0) {
            return Ok(cur);
        }
        if n >= AUTO_N_CAP {
            return Err(Error::NonConvergence { terms: n, tail: d });
        }
        prev = cur;
    }
}
