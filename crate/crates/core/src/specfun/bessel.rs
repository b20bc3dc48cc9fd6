//! Bessel functions J_ν and Y_ν of real order.
//!
//! The workhorse is Steed's method: the continued fraction CF1 for
//! J'_ν/J_ν, downward recurrence to a small order μ, then either Temme's
//! series (x < 2) or the complex continued fraction CF2 to fix the
//! normalisation and Y. Small arguments relative to the order use the
//! power series, large arguments the Hankel expansion.

use std::f64::consts::PI;

use super::gamma::{cos_pi, gam, lgamma, sin_pi};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 10_000_000;
const XMIN: f64 = 2.0;

const C1: [f64; 7] = [
    -1.142_022_680_371_168e0,
    6.516_511_267_073_7e-3,
    3.087_090_173_086e-4,
    -3.470_626_964_9e-6,
    6.943_766_4e-9,
    3.677_95e-11,
    -1.356e-13,
];
const C2: [f64; 8] = [
    1.843_740_587_300_905e0,
    -7.685_284_084_478_67e-2,
    1.271_927_136_654_6e-3,
    -4.971_736_704_2e-6,
    -3.312_611_98e-8,
    2.423_096e-10,
    -1.702e-13,
    -1.49e-15,
];

fn chebev(c: &[f64], y: f64) -> f64 {
    let y2 = 2.0 * y;
    let (mut d, mut dd) = (0.0, 0.0);
    for &cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    y * d - dd + 0.5 * c[0]
}

/// Temme's auxiliary gamma combinations for |μ| ≤ 1/2.
fn beschb(mu: f64) -> (f64, f64, f64, f64) {
    let xx = 8.0 * mu * mu - 1.0;
    let gam1 = chebev(&C1, xx);
    let gam2 = chebev(&C2, xx);
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// Steed's method for ν ≥ 0, x > 0. Returns (J_ν, Y_ν).
fn steed(nu: f64, x: f64) -> (f64, f64) {
    let nl = if x < XMIN {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence from ν to μ, rescaling to stay finite
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > 1e250 {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            rjl1 *= 1e-250;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = beschb(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut i = 1.0;
        loop {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= d / i;
            p /= i - xmu;
            q /= i + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - i * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS || i > 1e4 {
                break;
            }
            i += 1.0;
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut i = 2.0;
        while i < MAXIT as f64 {
            a += 2.0 * (i - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
            i += 1.0;
        }
        let g = (p - f) / q;
        let mag = (w / ((p - f) * g + q)).sqrt();
        rjmu = if rjl < 0.0 { -mag } else { mag };
        rymu = rjmu * g;
        let rymup = rymu * (p + q / g);
        ry1 = xmu * xi * rymu - rymup;
    }

    let rj = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    (rj, rymu)
}

/// Power series for J_ν(x), usable for any ν not a negative integer.
pub fn bessel_j_series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 1e5 {
            break;
        }
        k += 1.0;
    }
    let half = 0.5 * x;
    if nu > 100.0 {
        return sum * (nu * half.ln() - lgamma(nu + 1.0)).exp();
    }
    sum * half.powf(nu) / gam(nu + 1.0)
}

fn hankel_pq(nu: f64, x: f64) -> (f64, f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        let next = term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if next.abs() >= prev.abs() || next == 0.0 {
            if next == 0.0 {
                prev = 0.0;
            }
            break;
        }
        term = next;
        // a_k / x^k with the sign pattern (-1)^{⌊k/2⌋}
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        prev = term;
        k += 1;
        if k > 200 {
            break;
        }
    }
    (p, q, prev.abs())
}

/// Hankel asymptotic J_ν(x) and its truncation-error estimate.
pub fn bessel_j_hankel(nu: f64, x: f64) -> (f64, f64) {
    let (j, _, e) = hankel_jy(nu, x);
    (j, e)
}

/// Hankel asymptotic Y_ν(x) and its truncation-error estimate.
pub fn bessel_y_hankel(nu: f64, x: f64) -> (f64, f64) {
    let (_, y, e) = hankel_jy(nu, x);
    (y, e)
}

fn hankel_jy(nu: f64, x: f64) -> (f64, f64, f64) {
    let (p, q, tail) = hankel_pq(nu, x);
    let phi = 0.5 * nu + 0.25;
    let (cp, sp) = (cos_pi(phi), sin_pi(phi));
    let (cx, sx) = (x.cos(), x.sin());
    let cchi = cx * cp + sx * sp;
    let schi = sx * cp - cx * sp;
    let amp = (2.0 / (PI * x)).sqrt();
    (
        amp * (p * cchi - q * schi),
        amp * (p * schi + q * cchi),
        amp * tail,
    )
}

fn jy_nonneg(nu: f64, x: f64) -> (f64, f64) {
    if x >= 25.0_f64.max(nu * nu) {
        let (j, y, _) = hankel_jy(nu, x);
        return (j, y);
    }
    steed(nu, x)
}

/// (J_ν(x), Y_ν(x)) for any real ν and x > 0.
pub(crate) fn jy(nu: f64, x: f64) -> (f64, f64) {
    if nu >= 0.0 {
        return jy_nonneg(nu, x);
    }
    let mu = -nu;
    let (j, y) = jy_nonneg(mu, x);
    if mu == mu.round() {
        let s = if (mu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return (s * j, s * y);
    }
    let (c, s) = (cos_pi(mu), sin_pi(mu));
    (c * j - s * y, s * j + c * y)
}

/// J_ν(x) without argument checks, ν > -1, x > 0.
pub(crate) fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x * x <= nu.abs() + 1.0 {
        return bessel_j_series(nu, x);
    }
    jy(nu, x).0
}

/// Bessel function of the first kind J_ν(x) for ν > -1, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu <= -1.0 || nu.is_nan() {
        return Err(Error::Domain(format!("bessel_j order {nu} must exceed -1")));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_j argument {x} must be >= 0")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    Ok(j_unchecked(nu, x))
}

/// Bessel function of the second kind Y_ν(x) for real ν, x > 0.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.1)
}

/// Both kinds at once, for real ν and x > 0.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel argument {x} must be > 0")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("bessel order {nu}")));
    }
    Ok(jy(nu, x))
}
