//! Error bounds and predicted convergence rates.
//!
//! Only constant-free quantities become numbers. Everything that involves
//! unknown constants is reported as an exponent.

use std::fmt;

use crate::chebyshev::clenshaw;
use crate::error::{Error, Result};
use crate::quadrature::{IntegralSpec, Kernel};

/// Default size of the uniform grid used to measure sup-norm errors.
pub const SUP_GRID: usize = 2001;

/// f analytic inside the Bernstein ellipse E_ρ (on [-1, 1]) with |f| ≤ M there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticityInfo {
    pub rho: f64,
    pub m_bound: f64,
}

impl AnalyticityInfo {
    pub fn new(rho: f64, m_bound: f64) -> Result<AnalyticityInfo> {
        if !(rho > 1.0 && rho.is_finite()) {
            return Err(Error::Parameter(format!("rho = {rho} must be > 1")));
        }
        if !(m_bound > 0.0) {
            return Err(Error::Parameter(format!("M = {m_bound} must be > 0")));
        }
        Ok(AnalyticityInfo { rho, m_bound })
    }
}

/// Predicted error decay `x^{-exponent}`, possibly times a log factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rate {
    pub exponent: f64,
    pub log_factor: bool,
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exponent)?;
        if self.log_factor {
            f.write_str("+log")?;
        }
        Ok(())
    }
}

/// Where a field of an [`ErrorReport`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Chebyshev interpolation error of a function analytic in an ellipse.
    EllipseInterpolation,
    /// ‖f − P_N f‖∞ times the L¹ norm of the plain weight.
    SupNormPlain,
    /// ‖f − P_N f‖∞ times the L¹ norm of the log weight.
    SupNormLog,
    /// Large-ω decay of the plain weight's moments.
    OscillationPlain,
    /// Large-ω decay of the log weight's moments.
    OscillationLog,
    /// Chebyshev coefficient decay for f^(k) of bounded variation.
    BoundedVariation,
    /// Extra decay gained by endpoint derivative matching.
    HermiteEndpoints,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::EllipseInterpolation => "ellipse-interpolation",
            Basis::SupNormPlain => "sup-norm-plain",
            Basis::SupNormLog => "sup-norm-log",
            Basis::OscillationPlain => "oscillation-plain",
            Basis::OscillationLog => "oscillation-log",
            Basis::BoundedVariation => "bounded-variation",
            Basis::HermiteEndpoints => "hermite-endpoints",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub explicit_bound: Option<f64>,
    pub rate_omega: Option<Rate>,
    pub rate_n: Option<Rate>,
    pub basis: Vec<Basis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMode {
    /// N fixed, ω → ∞.
    FixedN,
    /// ω fixed, N → ∞, for f^(k) of bounded variation.
    FixedOmega(u32),
    /// Hermite variant with s endpoint derivatives, ω → ∞.
    Hccf(u32),
}

fn double_factorial_ln(n: u32) -> f64 {
    // ln((2n-1)!!), with (-1)!! = 1
    (1..=n).map(|i| ((2 * i - 1) as f64).ln()).sum()
}

/// Bound on ‖f^(n) − (P_N f)^(n)‖∞ over [-1, 1] for f analytic in E_ρ.
///
/// `2M (N+1)^{2n} / ((ρ^N − ρ^{-N}) (2n−1)!!) · Σ_{j=0}^{n} (2ρ/(ρ−1)²)^{n+1−j}`;
/// +∞ when it does not fit in a double.
pub fn interp_error_bound(info: &AnalyticityInfo, n: usize, deriv: u32) -> f64 {
    let rho = info.rho;
    if n == 0 || !(rho > 1.0) {
        return f64::INFINITY;
    }
    let nf = n as f64;
    let q = 2.0 * rho / ((rho - 1.0) * (rho - 1.0));
    let lq = q.ln();
    // log of Σ_j q^{n+1-j} = Σ_{i=1}^{n+1} q^i, summed relative to its largest term
    let imax = if q >= 1.0 { deriv + 1 } else { 1 };
    let lsum = (imax as f64) * lq
        + (1..=deriv + 1)
            .map(|i| ((i as f64 - imax as f64) * lq).exp())
            .sum::<f64>()
            .ln();
    let lden = nf * rho.ln() + (-(-2.0 * nf * rho.ln()).exp()).ln_1p();
    let l = (2.0 * info.m_bound).ln() + 2.0 * deriv as f64 * (nf + 1.0).ln() - lden
        - double_factorial_ln(deriv)
        + lsum;
    let v = l.exp();
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Constant-free bound on |I − CCF| given ‖f − P_N f‖∞ over [0, b].
pub fn explicit_ccf_bound(spec: &IntegralSpec, sup_err: f64) -> f64 {
    let a1 = spec.alpha + 1.0;
    let b = spec.b;
    let w = match spec.kernel {
        Kernel::Plain => b.powf(a1) / a1,
        Kernel::Log if b <= 1.0 => b.powf(a1) * (1.0 - a1 * b.ln()) / (a1 * a1),
        Kernel::Log => (2.0 + b.powf(a1) * (a1 * b.ln() - 1.0)) / (a1 * a1),
    };
    w * sup_err
}

/// Exponent of the constant C(ω) with |moment-weighted error| ≲ C(ω)/ω.
fn oscillation_rate(spec: &IntegralSpec) -> Rate {
    let a = spec.alpha;
    match spec.kernel {
        Kernel::Plain => Rate {
            exponent: if a < 0.0 { a + 1.0 } else { 1.0 },
            log_factor: false,
        },
        // the α = 0 boundary keeps the log factor
        Kernel::Log => Rate {
            exponent: if a < 0.0 { a + 1.0 } else { 1.0 },
            log_factor: a <= 0.0,
        },
    }
}

/// Predicted exponents for the given asymptotic regime.
pub fn rate_predictor(spec: &IntegralSpec, mode: RateMode) -> ErrorReport {
    let osc = match spec.kernel {
        Kernel::Plain => Basis::OscillationPlain,
        Kernel::Log => Basis::OscillationLog,
    };
    let omega_ok = spec.omega >= 1.0;
    match mode {
        RateMode::FixedN | RateMode::Hccf(_) => {
            let s = match mode {
                RateMode::Hccf(s) => s as f64,
                _ => 0.0,
            };
            let c = oscillation_rate(spec);
            let mut basis = vec![osc];
            if matches!(mode, RateMode::Hccf(_)) {
                basis.push(Basis::HermiteEndpoints);
            }
            ErrorReport {
                explicit_bound: None,
                rate_omega: omega_ok.then_some(Rate {
                    exponent: c.exponent + 1.0 + s,
                    log_factor: c.log_factor,
                }),
                rate_n: None,
                basis,
            }
        }
        RateMode::FixedOmega(k) => {
            let a = spec.alpha;
            let k = k as f64;
            let exponent = if a < -0.5 { k + 2.0 * a + 2.0 } else { k + 1.0 };
            ErrorReport {
                explicit_bound: None,
                rate_omega: None,
                rate_n: Some(Rate {
                    exponent,
                    log_factor: spec.kernel == Kernel::Log && a <= -0.5,
                }),
                basis: vec![Basis::BoundedVariation],
            }
        }
    }
}

/// max |f(x) − P(x)| on a uniform grid of `points` nodes over [0, b].
pub fn sup_error(f: impl Fn(f64) -> f64, coeffs: &[f64], b: f64, points: usize) -> f64 {
    let points = points.max(2);
    (0..points)
        .map(|i| {
            let x = b * i as f64 / (points - 1) as f64;
            (f(x) - clenshaw(coeffs, b, x)).abs()
        })
        .fold(0.0, f64::max)
}

/// Rates for `mode` plus the explicit bound from a measured sup error.
pub fn error_report(spec: &IntegralSpec, mode: RateMode, sup_err: Option<f64>) -> ErrorReport {
    let mut r = rate_predictor(spec, mode);
    if let Some(e) = sup_err {
        r.explicit_bound = Some(explicit_ccf_bound(spec, e));
        r.basis.insert(
            0,
            match spec.kernel {
                Kernel::Plain => Basis::SupNormPlain,
                Kernel::Log => Basis::SupNormLog,
            },
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(alpha: f64, kernel: Kernel) -> IntegralSpec {
        IntegralSpec::new(1.0, alpha, 0.0, 100.0, kernel).unwrap()
    }

    #[test]
    fn n0_single_term() {
        let info = AnalyticityInfo::new(3.0, 2.0).unwrap();
        let want = 2.0 * 2.0 / (3f64.powi(8) - 3f64.powi(-8)) * (2.0 * 3.0 / 4.0);
        let got = interp_error_bound(&info, 8, 0);
        assert!((got - want).abs() < 1e-14 * want);
    }

    #[test]
    fn matches_direct_formula() {
        let info = AnalyticityInfo::new(1.7, 0.4).unwrap();
        let (rho, n, d) = (1.7f64, 10usize, 3u32);
        let q = 2.0 * rho / (rho - 1.0).powi(2);
        let s: f64 = (0..=d).map(|j| q.powi((d + 1 - j) as i32)).sum();
        let want = 2.0 * 0.4 * ((n + 1) as f64).powi(6) / ((rho.powi(10) - rho.powi(-10)) * 15.0) * s;
        let got = interp_error_bound(&info, n, d);
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn overflow_is_infinite() {
        let info = AnalyticityInfo::new(1.0 + 1e-12, 1e300).unwrap();
        assert_eq!(interp_error_bound(&info, 2, 40), f64::INFINITY);
    }

    #[test]
    fn explicit_b1() {
        let s = spec(0.0, Kernel::Plain);
        assert_eq!(explicit_ccf_bound(&s, 0.3), 0.3);
        let s = spec(-0.5, Kernel::Log);
        assert!((explicit_ccf_bound(&s, 0.3) - 1.2).abs() < 1e-15);
    }

    #[test]
    fn log_bound_is_continuous_at_b1() {
        let lo = IntegralSpec::new(1.0 - 1e-9, 0.3, 0.0, 5.0, Kernel::Log).unwrap();
        let hi = IntegralSpec::new(1.0 + 1e-9, 0.3, 0.0, 5.0, Kernel::Log).unwrap();
        assert!((explicit_ccf_bound(&lo, 1.0) - explicit_ccf_bound(&hi, 1.0)).abs() < 1e-8);
    }

    #[test]
    fn predicted_exponents() {
        let r = rate_predictor(&spec(-0.5, Kernel::Plain), RateMode::FixedN);
        assert_eq!(r.rate_omega.unwrap().exponent, 1.5);
        let r = rate_predictor(&spec(0.5, Kernel::Plain), RateMode::FixedOmega(3));
        assert_eq!(r.rate_n.unwrap().exponent, 4.0);
        let r = rate_predictor(&spec(-0.75, Kernel::Log), RateMode::FixedOmega(1));
        assert_eq!(r.rate_n.unwrap(), Rate { exponent: 1.5, log_factor: true });
        let r = rate_predictor(&spec(0.0, Kernel::Log), RateMode::FixedN);
        assert_eq!(r.rate_omega.unwrap(), Rate { exponent: 2.0, log_factor: true });
        let r = rate_predictor(&spec(-0.5, Kernel::Plain), RateMode::Hccf(2));
        assert_eq!(r.rate_omega.unwrap().exponent, 3.5);
    }

    #[test]
    fn small_omega_has_no_omega_rate() {
        let s = IntegralSpec::new(1.0, 0.0, 0.0, 0.5, Kernel::Plain).unwrap();
        assert!(rate_predictor(&s, RateMode::FixedN).rate_omega.is_none());
    }
}
