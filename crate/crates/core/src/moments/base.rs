//! G(r, m, α) = ∫_0^1 x^α J_m(rx) dx and its α-derivative.
//!
//! Three representations are available:
//!
//! * Lommel form, used for r ≥ 50
//! * Bessel series Γ(s)/r Σ_j (m+2j+1) (p)_j / Γ(q+j) J_{m+2j+1}(r), used for r < 50
//! * r^m / (2^m (α+m+1) Γ(m+1)) · 1F2((α+m+1)/2; (α+m+3)/2, m+1; -r²/4)
//!
//! with s = (m+α+1)/2, p = (m-α+1)/2, q = (m+α+3)/2. The 1F2 form is the
//! cross-check for the other two while r ≤ 100.

use std::f64::consts::LN_2;

use super::MomentParams;
use crate::error::{Error, Result};
use crate::specfun::bessel::{j_unchecked, jy};
use crate::specfun::gamma::{gam, psi, rgamma, rgamma_deriv};
use crate::specfun::hyp::{hyp1f2_dparam_with, hyp1f2_with, Param};
use crate::specfun::lommel::{lommel_s_asymptotic, lommel_s_dmu_asymptotic};
use crate::specfun::wide::Wide;
use crate::specfun::{lommel_s, lommel_s_dmu, SeriesConfig};

const LARGE_R: f64 = 50.0;
const CROSS_CHECK_MAX_R: f64 = 100.0;
const AGREE: f64 = 1e-8;
// initial moments come from the extended precision power series up to here
const SERIES_MAX_R: f64 = 2048.0;

/// A value together with the magnitude of the pieces it was assembled from.
#[derive(Debug, Clone, Copy)]
struct Est {
    v: f64,
    scale: f64,
}

fn tight() -> SeriesConfig {
    SeriesConfig {
        rel_tol: 1e-17,
        ..SeriesConfig::default()
    }
}

fn lommel(mu: f64, nu: f64, z: f64) -> Result<f64> {
    let (v, e) = lommel_s_asymptotic(mu, nu, z);
    if e <= 1e-15 * v.abs() {
        return Ok(v);
    }
    lommel_s(mu, nu, z)
}

fn lommel_dmu(mu: f64, nu: f64, z: f64) -> Result<f64> {
    let (v, e) = lommel_s_dmu_asymptotic(mu, nu, z);
    if e <= 1e-15 * v.abs() {
        return Ok(v);
    }
    lommel_s_dmu(mu, nu, z)
}

fn g_lommel(p: &MomentParams) -> Result<Est> {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let s = 0.5 * (m + a + 1.0);
    let pp = 0.5 * (m - a + 1.0);
    let head = 2f64.powf(a) * gam(s) * rgamma(pp) * r.powf(-a - 1.0);
    let (jm, _) = jy(m, r);
    let (jm1, _) = jy(m - 1.0, r);
    let s1 = lommel(a - 1.0, m - 1.0, r)?;
    let s2 = lommel(a, m, r)?;
    let ra = r.powf(-a);
    let t1 = ra * (a + m - 1.0) * jm * s1;
    let t2 = ra * jm1 * s2;
    Ok(Est {
        v: head + t1 - t2,
        scale: head.abs() + t1.abs() + t2.abs(),
    })
}

fn dg_lommel(p: &MomentParams) -> Result<Est> {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let s = 0.5 * (m + a + 1.0);
    let pp = 0.5 * (m - a + 1.0);
    let lr = r.ln();
    let c = 2f64.powf(a) * gam(s) * r.powf(-a - 1.0);
    let head = c * rgamma(pp);
    let dhead = head * (LN_2 - lr + 0.5 * psi(s)) - 0.5 * c * rgamma_deriv(pp);

    let (jm, _) = jy(m, r);
    let (jm1, _) = jy(m - 1.0, r);
    let s1 = lommel(a - 1.0, m - 1.0, r)?;
    let s2 = lommel(a, m, r)?;
    let ds1 = lommel_dmu(a - 1.0, m - 1.0, r)?;
    let ds2 = lommel_dmu(a, m, r)?;
    let ra = r.powf(-a);
    let body = ra * ((a + m - 1.0) * jm * s1 - jm1 * s2);
    let dbody = -lr * body + ra * (jm * s1 + (a + m - 1.0) * jm * ds1 - jm1 * ds2);
    let scale = dhead.abs()
        + (lr * body).abs()
        + (ra * jm * s1).abs()
        + (ra * (a + m - 1.0) * jm * ds1).abs()
        + (ra * jm1 * ds2).abs();
    Ok(Est {
        v: dhead + dbody,
        scale,
    })
}

/// Terms of the Bessel series; calls `each(j, (p)_j, d(p)_j/dp, 1/Γ(q+j), ψ(q+j), J)`.
fn bessel_series(p: &MomentParams, mut each: impl FnMut(f64, f64, f64, f64, f64, f64) -> f64) -> (f64, f64) {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let pp = 0.5 * (m - a + 1.0);
    let q = 0.5 * (m + a + 3.0);
    let mut poch = 1.0;
    let mut dpoch = 0.0;
    let mut rg = rgamma(q);
    let mut ps = psi(q);
    let mut sum = 0.0;
    let mut abs = 0.0;
    let mut j = 0.0;
    loop {
        let order = m + 2.0 * j + 1.0;
        let bj = j_unchecked(order, r);
        let t = each(j, poch, dpoch, rg, ps, bj) * order;
        sum += t;
        abs += t.abs();
        if order > r + 10.0 && (t.abs() <= 1e-18 * abs || bj == 0.0) {
            break;
        }
        if j > 1e5 {
            break;
        }
        dpoch = dpoch * (pp + j) + poch;
        poch *= pp + j;
        rg /= q + j;
        ps += 1.0 / (q + j);
        j += 1.0;
    }
    (sum, abs)
}

fn g_series(p: &MomentParams) -> Est {
    let s = 0.5 * (p.m + p.alpha + 1.0);
    let f = gam(s) / p.r;
    let (sum, abs) = bessel_series(p, |_, poch, _, rg, _, bj| poch * rg * bj);
    Est {
        v: f * sum,
        scale: f.abs() * abs,
    }
}

fn dg_series(p: &MomentParams) -> Est {
    let s = 0.5 * (p.m + p.alpha + 1.0);
    let f = gam(s) / p.r;
    let g = g_series(p);
    // d/dα of (p)_j/Γ(q+j) with dp/dα = -1/2, dq/dα = 1/2
    let (sum, abs) = bessel_series(p, |_, poch, dpoch, rg, ps, bj| {
        0.5 * rg * (-dpoch - poch * ps) * bj
    });
    let head = 0.5 * psi(s) * g.v;
    Est {
        v: head + f * sum,
        scale: head.abs() + f.abs() * abs,
    }
}

fn hyp_prefactor(p: &MomentParams) -> (f64, f64, f64, f64) {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let pre = (0.5 * r).powf(m) * rgamma(m + 1.0) / (a + m + 1.0);
    (pre, 0.5 * (a + m + 1.0), 0.5 * (a + m + 3.0), m + 1.0)
}

fn g_hyp(p: &MomentParams) -> Result<Est> {
    let (pre, a1, b1, c1) = hyp_prefactor(p);
    let f = hyp1f2_with(&tight(), a1, b1, c1, -0.25 * p.r * p.r)?;
    if !f.converged {
        return Err(Error::NonConvergence {
            terms: f.terms_used,
            tail: f.tail_estimate,
        });
    }
    Ok(Est {
        v: pre * f.value,
        scale: (pre * f.value).abs(),
    })
}

fn dg_hyp(p: &MomentParams) -> Result<Est> {
    let (pre, a1, b1, c1) = hyp_prefactor(p);
    let z = -0.25 * p.r * p.r;
    let cfg = tight();
    let f = hyp1f2_with(&cfg, a1, b1, c1, z)?;
    let fa = hyp1f2_dparam_with(&cfg, a1, b1, c1, z, Param::A)?;
    let fb = hyp1f2_dparam_with(&cfg, a1, b1, c1, z, Param::B)?;
    if !(f.converged && fa.converged && fb.converged) {
        return Err(Error::NonConvergence {
            terms: f.terms_used,
            tail: f.tail_estimate,
        });
    }
    let t0 = -pre * f.value / (p.alpha + p.m + 1.0);
    let t1 = pre * 0.5 * (fa.value + fb.value);
    Ok(Est {
        v: t0 + t1,
        scale: t0.abs() + t1.abs(),
    })
}

fn agree(what: &'static str, primary: Est, check: Est) -> Result<f64> {
    let tol = AGREE * primary.v.abs() + 1e-13 * primary.scale;
    if (primary.v - check.v).abs() > tol {
        return Err(Error::Inconsistent {
            what,
            a: primary.v,
            b: check.v,
        });
    }
    Ok(primary.v)
}

/// G(r, m, α) = ∫_0^1 x^α J_m(rx) dx.
pub fn base_moment_g(p: &MomentParams) -> Result<f64> {
    p.validate()?;
    if p.r >= LARGE_R {
        let primary = g_lommel(p)?;
        if p.r <= CROSS_CHECK_MAX_R {
            return agree("G", primary, g_hyp(p)?);
        }
        Ok(primary.v)
    } else {
        agree("G", g_series(p), g_hyp(p)?)
    }
}

/// ∂G/∂α = ∫_0^1 x^α ln(x) J_m(rx) dx.
pub fn base_moment_dg(p: &MomentParams) -> Result<f64> {
    p.validate()?;
    if p.r >= LARGE_R {
        let primary = dg_lommel(p)?;
        if p.r <= CROSS_CHECK_MAX_R {
            return agree("dG/dalpha", primary, dg_hyp(p)?);
        }
        Ok(primary.v)
    } else {
        agree("dG/dalpha", dg_hyp(p)?, dg_series(p))
    }
}

fn combine(g: [f64; 4]) -> [f64; 4] {
    let m0 = g[0];
    let m1 = 2.0 * g[1] - m0;
    let m2 = 8.0 * g[2] - 4.0 * m1 - 3.0 * m0;
    let m3 = 32.0 * g[3] - 6.0 * m2 - 15.0 * m1 - 10.0 * m0;
    [m0, m1, m2, m3]
}

// coefficients of T*_j(x) = T_j(2x - 1), constant term first
const SHIFTED_CHEB: [[i64; 4]; 4] = [[1, 0, 0, 0], [-1, 2, 0, 0], [1, -8, 8, 0], [-1, 18, -48, 32]];

/// M_0..M_3 (or their α-derivatives) from the power series
/// Σ_n (-1)^n (r/2)^(m+2n) / (n! Γ(m+n+1)) ∫_0^1 x^(α+m+2n) T*_j(x) dx,
/// summed in extended precision so that neither the alternating terms nor
/// the monomial weights of T*_j lose digits.
fn initial_series(p: &MomentParams, log: bool) -> [f64; 4] {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let prec = 128 + (1.45 * r).ceil() as u64;
    let w = Wide::from_f64;
    let z = w(0.5 * r).mul(&w(0.5 * r), prec);
    let beta1 = w(a).add(&w(m), prec).add(&w(1.0), prec);
    let mut t = w(1.0);
    let mut sums = [Wide::zero(), Wide::zero(), Wide::zero(), Wide::zero()];
    let mut n = 0u64;
    loop {
        let s = beta1.add(&w(2.0 * n as f64), prec);
        let mut inner = [Wide::zero(), Wide::zero(), Wide::zero(), Wide::zero()];
        for k in 0..4 {
            let d = s.add(&w(k as f64), prec);
            let d = if log { d.mul(&d, prec) } else { d };
            let inv = w(if log { -1.0 } else { 1.0 }).div(&d, prec);
            for (j, c) in SHIFTED_CHEB.iter().enumerate() {
                if c[k] != 0 {
                    inner[j] = inner[j].add(&inv.mul(&w(c[k] as f64), prec), prec);
                }
            }
        }
        for (sum, i) in sums.iter_mut().zip(&inner) {
            *sum = sum.add(&t.mul(i, prec), prec);
        }
        let tf = t.to_f64().abs();
        let big = sums.iter().map(|s| s.to_f64().abs()).fold(0.0, f64::max);
        if n as f64 > r && tf < 1e-25 * big {
            break;
        }
        n += 1;
        let den = w(n as f64).mul(&w(m).add(&w(n as f64), prec), prec);
        t = t.mul(&z, prec).div(&den, prec).neg();
    }
    let head = (0.5 * r).powf(m) * rgamma(m + 1.0);
    sums.map(|s| head * s.to_f64())
}

/// M_0..M_3 from G at α, α+1, α+2, α+3.
pub fn initial_moments(p: &MomentParams) -> Result<[f64; 4]> {
    if p.r <= SERIES_MAX_R {
        return Ok(initial_series(p, false));
    }
    let mut g = [0.0; 4];
    for (k, v) in g.iter_mut().enumerate() {
        *v = base_moment_g(&p.shifted(k as f64))?;
    }
    Ok(combine(g))
}

/// M̃_0..M̃_3 from ∂G/∂α at α, α+1, α+2, α+3.
pub fn initial_log_moments(p: &MomentParams) -> Result<[f64; 4]> {
    if p.r <= SERIES_MAX_R {
        return Ok(initial_series(p, true));
    }
    let mut g = [0.0; 4];
    for (k, v) in g.iter_mut().enumerate() {
        *v = base_moment_dg(&p.shifted(k as f64))?;
    }
    Ok(combine(g))
}
