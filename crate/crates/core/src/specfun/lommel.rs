//! The Lommel function S_{μ,ν}(z) and its derivative in μ.
//!
//! Small z:
//!
//! ```text
//! S = z^{μ+1}/((μ+1)²-ν²) · 1F2(1; (μ-ν+3)/2, (μ+ν+3)/2; -z²/4)
//!   + 2^{μ-1} Γ((μ-ν+1)/2) Γ((μ+ν+1)/2) [sin((μ-ν)π/2) J_ν(z) - cos((μ-ν)π/2) Y_ν(z)]
//! ```
//!
//! Large z: `S ~ z^{μ-1} Σ_k (-1)^k P_k z^{-2k}` with
//! `P_k = Π_{i=1..k} ((μ-2i+1)² - ν²)`, cut at the smallest term.

use std::f64::consts::{LN_2, PI};

use super::bessel::jy;
use super::gamma::{cos_pi, gam, psi, sin_pi};
use super::hyp::{hyp1f2_dparam_with, hyp1f2_with, Param};
use super::{near_nonpositive_int, SeriesConfig};
use crate::error::{Error, Result};

/// Switch from the closed form to the asymptotic expansion.
pub const LOMMEL_SWITCH: f64 = 50.0;

fn inner_cfg() -> SeriesConfig {
    SeriesConfig {
        rel_tol: 1e-17,
        ..SeriesConfig::default()
    }
}

fn check_poles(mu: f64, nu: f64) -> Result<(f64, f64)> {
    let p = 0.5 * (mu - nu + 1.0);
    let q = 0.5 * (mu + nu + 1.0);
    for x in [p, q] {
        if near_nonpositive_int(x) {
            return Err(Error::Pole {
                func: "lommel_s",
                at: x,
            });
        }
    }
    Ok((p, q))
}

/// Closed-form branch; returns (value, error estimate).
pub fn lommel_s_small(mu: f64, nu: f64, z: f64) -> Result<(f64, f64)> {
    let (p, q) = check_poles(mu, nu)?;
    let cfg = inner_cfg();
    let f = hyp1f2_with(&cfg, 1.0, p + 1.0, q + 1.0, -0.25 * z * z)?;
    if !f.converged {
        return Err(Error::NonConvergence {
            terms: f.terms_used,
            tail: f.tail_estimate,
        });
    }
    let pre = z.powf(mu + 1.0) / (4.0 * p * q);
    let (j, y) = jy(nu, z);
    let th = 0.5 * (mu - nu);
    let g = 2f64.powf(mu - 1.0) * gam(p) * gam(q);
    let t = g * (sin_pi(th) * j - cos_pi(th) * y);
    let s = pre * f.value + t;
    let err = 1e-16 * ((pre * f.value).abs() + t.abs()) * 4.0;
    Ok((s, err))
}

fn asymptotic_terms(mu: f64, nu: f64, z: f64) -> (f64, f64, f64, f64) {
    // returns (Σ, Σ', smallest |term|, smallest |term'|) without the z^{μ-1} factor;
    // the two series are cut independently since P_k may terminate while P_k' does not
    let iz2 = 1.0 / (z * z);
    let (mut p, mut dp, mut zp) = (1.0, 0.0, 1.0);
    let (mut sum, mut dsum) = (1.0, 0.0);
    let (mut prev, mut prev_d) = (1.0f64, f64::INFINITY);
    let (mut tail, mut tail_d) = (None, None);
    let mut k = 1usize;
    while tail.is_none() || tail_d.is_none() {
        let a = mu - 2.0 * k as f64 + 1.0;
        let fk = a * a - nu * nu;
        let ndp = dp * fk + p * 2.0 * a;
        let np = p * fk;
        zp *= -iz2;
        let (term, dterm) = (np * zp, ndp * zp);
        if zp == 0.0 || !term.is_finite() || !dterm.is_finite() {
            // underflow: whatever is left is far below the smallest kept term
            break;
        }
        if tail.is_none() {
            if np == 0.0 {
                tail = Some(0.0);
            } else if k > 1 && term.abs() >= prev {
                tail = Some(prev);
            } else {
                sum += term;
                prev = term.abs();
            }
        }
        if tail_d.is_none() {
            if np == 0.0 && ndp == 0.0 {
                tail_d = Some(0.0);
            } else if dterm != 0.0 {
                if dterm.abs() >= prev_d {
                    tail_d = Some(prev_d);
                } else {
                    dsum += dterm;
                    prev_d = dterm.abs();
                }
            }
        }
        p = np;
        dp = ndp;
        k += 1;
        if k > 10_000 {
            break;
        }
    }
    (sum, dsum, tail.unwrap_or(prev), tail_d.unwrap_or(prev_d))
}

/// Asymptotic branch; returns (value, error estimate).
pub fn lommel_s_asymptotic(mu: f64, nu: f64, z: f64) -> (f64, f64) {
    let (s, _, tail, _) = asymptotic_terms(mu, nu, z);
    let zf = z.powf(mu - 1.0);
    (zf * s, zf * tail + 2e-16 * (zf * s).abs())
}

/// ∂/∂μ of the closed-form branch; returns (value, error estimate).
pub fn lommel_s_dmu_small(mu: f64, nu: f64, z: f64) -> Result<(f64, f64)> {
    let (p, q) = check_poles(mu, nu)?;
    let cfg = inner_cfg();
    let (b, c, zz) = (p + 1.0, q + 1.0, -0.25 * z * z);
    let f = hyp1f2_with(&cfg, 1.0, b, c, zz)?;
    let fb = hyp1f2_dparam_with(&cfg, 1.0, b, c, zz, Param::B)?;
    let fc = hyp1f2_dparam_with(&cfg, 1.0, b, c, zz, Param::C)?;
    if !(f.converged && fb.converged && fc.converged) {
        return Err(Error::NonConvergence {
            terms: f.terms_used,
            tail: f.tail_estimate,
        });
    }
    let pre = z.powf(mu + 1.0) / (4.0 * p * q);
    let dpre = pre * (z.ln() - (p + q) / (2.0 * p * q));
    let d1 = dpre * f.value + pre * 0.5 * (fb.value + fc.value);

    let (j, y) = jy(nu, z);
    let th = 0.5 * (mu - nu);
    let (st, ct) = (sin_pi(th), cos_pi(th));
    let g = 2f64.powf(mu - 1.0) * gam(p) * gam(q);
    let w = st * j - ct * y;
    let dw = 0.5 * PI * (ct * j + st * y);
    let d2 = g * w * (LN_2 + 0.5 * psi(p) + 0.5 * psi(q)) + g * dw;
    let scale = (dpre * f.value).abs() + (pre * fb.value).abs() + (pre * fc.value).abs() + d2.abs();
    Ok((d1 + d2, 4e-16 * scale))
}

/// ∂/∂μ of the asymptotic branch; returns (value, error estimate).
pub fn lommel_s_dmu_asymptotic(mu: f64, nu: f64, z: f64) -> (f64, f64) {
    let (s, ds, tail, dtail) = asymptotic_terms(mu, nu, z);
    let zf = z.powf(mu - 1.0);
    let lz = z.ln();
    let v = zf * (lz * s + ds);
    (v, zf * (lz * tail + dtail) + 4e-16 * v.abs())
}

fn pick(
    z: f64,
    small: impl Fn() -> Result<(f64, f64)>,
    asym: impl Fn() -> (f64, f64),
    tol: f64,
) -> Result<f64> {
    let ok = |(v, e): (f64, f64)| e <= tol * v.abs();
    if z >= LOMMEL_SWITCH {
        let a = asym();
        if ok(a) {
            return Ok(a.0);
        }
        match small() {
            Ok(s) if ok(s) => Ok(s.0),
            _ => Err(Error::BranchFailure("lommel_s")),
        }
    } else {
        let first = small();
        match first {
            Ok(s) if ok(s) => return Ok(s.0),
            _ => {}
        }
        let a = asym();
        if ok(a) {
            return Ok(a.0);
        }
        match first {
            Err(e @ Error::Pole { .. }) => Err(e),
            _ => Err(Error::BranchFailure("lommel_s")),
        }
    }
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("lommel_s argument {z} must be > 0")));
    }
    Ok(())
}

/// Lommel function S_{μ,ν}(z) for z > 0.
pub fn lommel_s(mu: f64, nu: f64, z: f64) -> Result<f64> {
    check_z(z)?;
    pick(
        z,
        || lommel_s_small(mu, nu, z),
        || lommel_s_asymptotic(mu, nu, z),
        1e-12,
    )
}

/// ∂S_{μ,ν}(z)/∂μ for z > 0.
pub fn lommel_s_dmu(mu: f64, nu: f64, z: f64) -> Result<f64> {
    check_z(z)?;
    pick(
        z,
        || lommel_s_dmu_small(mu, nu, z),
        || lommel_s_dmu_asymptotic(mu, nu, z),
        1e-11,
    )
}
