//! The hypergeometric function 1F2(a; b, c; z) and its parameter derivatives.
//!
//! For z < 0 the terms alternate and grow to roughly e^{2√|z|} before the
//! series settles, so a plain double sum loses that many digits. The series
//! is summed once in double to measure the cancellation, and re-summed in
//! [`Wide`] arithmetic with enough bits when the loss would be visible.

use super::wide::Wide;
use super::{near_nonpositive_int, SeriesConfig, SeriesResult};
use crate::error::{Error, Result};

/// Which parameter to differentiate by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    A,
    B,
    C,
}

trait Num: Clone {
    fn lit(x: f64) -> Self;
    fn add(&self, o: &Self, prec: u64) -> Self;
    fn mul(&self, o: &Self, prec: u64) -> Self;
    fn div(&self, o: &Self, prec: u64) -> Self;
    fn approx(&self) -> f64;
}

impl Num for f64 {
    fn lit(x: f64) -> Self {
        x
    }
    fn add(&self, o: &Self, _: u64) -> Self {
        self + o
    }
    fn mul(&self, o: &Self, _: u64) -> Self {
        self * o
    }
    fn div(&self, o: &Self, _: u64) -> Self {
        self / o
    }
    fn approx(&self) -> f64 {
        *self
    }
}

impl Num for Wide {
    fn lit(x: f64) -> Self {
        Wide::from_f64(x)
    }
    fn add(&self, o: &Self, prec: u64) -> Self {
        Wide::add(self, o, prec)
    }
    fn mul(&self, o: &Self, prec: u64) -> Self {
        Wide::mul(self, o, prec)
    }
    fn div(&self, o: &Self, prec: u64) -> Self {
        Wide::div(self, o, prec)
    }
    fn approx(&self) -> f64 {
        self.to_f64()
    }
}

struct Sums {
    f: SeriesResult,
    d: Option<SeriesResult>,
}

fn sum_series<T: Num>(
    cfg: &SeriesConfig,
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    which: Option<Param>,
    prec: u64,
) -> Sums {
    let zw = T::lit(z);
    let mut t = T::lit(1.0);
    let mut dt = T::lit(0.0);
    let mut sum = T::lit(1.0);
    let mut dsum = T::lit(0.0);
    let (mut abs_f, mut abs_d) = (1.0f64, 0.0f64);
    let mut small_run = 0;
    let mut converged = false;
    let mut k = 0usize;
    let mut last = 1.0f64;
    let mut last_d = 0.0f64;
    while k < cfg.max_terms {
        let kf = k as f64;
        let ak = T::lit(a).add(&T::lit(kf), prec);
        let bk = T::lit(b).add(&T::lit(kf), prec);
        let ck = T::lit(c).add(&T::lit(kf), prec);
        let den = bk.mul(&ck, prec).mul(&T::lit(kf + 1.0), prec);
        let zden = zw.div(&den, prec);
        let rho = ak.mul(&zden, prec);
        if let Some(p) = which {
            let grow = dt.mul(&rho, prec);
            let extra = match p {
                Param::A => t.mul(&zden, prec),
                Param::B => t.mul(&rho, prec).div(&bk, prec).mul(&T::lit(-1.0), prec),
                Param::C => t.mul(&rho, prec).div(&ck, prec).mul(&T::lit(-1.0), prec),
            };
            dt = grow.add(&extra, prec);
            dsum = dsum.add(&dt, prec);
        }
        t = t.mul(&rho, prec);
        sum = sum.add(&t, prec);
        k += 1;

        last = t.approx().abs();
        abs_f += last;
        let s = sum.approx().abs();
        let mut small = last <= cfg.rel_tol * s + cfg.abs_tol;
        if which.is_some() {
            last_d = dt.approx().abs();
            abs_d += last_d;
            small &= last_d <= cfg.rel_tol * dsum.approx().abs() + cfg.abs_tol;
        }
        let past_peak = rho.approx().abs() < 1.0 || last == 0.0;
        if small && past_peak {
            small_run += 1;
            if small_run >= 2 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        if !abs_f.is_finite() {
            break;
        }
    }
    let f = SeriesResult {
        value: sum.approx(),
        terms_used: k + 1,
        converged,
        tail_estimate: last,
        abs_sum: abs_f,
    };
    let d = which.map(|_| SeriesResult {
        value: dsum.approx(),
        terms_used: k + 1,
        converged,
        tail_estimate: last_d,
        abs_sum: abs_d,
    });
    Sums { f, d }
}

fn lost_bits(r: &SeriesResult) -> f64 {
    if r.value == 0.0 {
        return if r.abs_sum == 0.0 { 0.0 } else { 1100.0 };
    }
    (r.abs_sum / r.value.abs()).max(1.0).log2()
}

fn sum_accurate(
    cfg: &SeriesConfig,
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    which: Option<Param>,
) -> Result<Sums> {
    if near_nonpositive_int(b) || near_nonpositive_int(c) {
        return Err(Error::Pole {
            func: "hyp1f2",
            at: if near_nonpositive_int(b) { b } else { c },
        });
    }
    let quick = sum_series::<f64>(cfg, a, b, c, z, which, 53);
    let loss = |s: &Sums| {
        let mut l = lost_bits(&s.f);
        if let Some(d) = &s.d {
            l = l.max(lost_bits(d));
        }
        l
    };
    let l0 = loss(&quick);
    if l0 < 4.0 || !quick.f.abs_sum.is_finite() {
        return Ok(quick);
    }
    let mut prec = 53 + 64 + l0.ceil() as u64;
    loop {
        let wide = sum_series::<Wide>(cfg, a, b, c, z, which, prec);
        let l = loss(&wide);
        if prec as f64 - l >= 80.0 || prec > 8192 {
            return Ok(wide);
        }
        prec = l.ceil() as u64 + 140;
    }
}

/// 1F2(a; b, c; z) with explicit tolerances.
pub fn hyp1f2_with(cfg: &SeriesConfig, a: f64, b: f64, c: f64, z: f64) -> Result<SeriesResult> {
    Ok(sum_accurate(cfg, a, b, c, z, None)?.f)
}

/// 1F2(a; b, c; z) with default tolerances.
pub fn hyp1f2(a: f64, b: f64, c: f64, z: f64) -> Result<SeriesResult> {
    hyp1f2_with(&SeriesConfig::default(), a, b, c, z)
}

/// ∂/∂p 1F2(a; b, c; z) for the parameter p selected by `which`.
pub fn hyp1f2_dparam(a: f64, b: f64, c: f64, z: f64, which: Param) -> Result<SeriesResult> {
    hyp1f2_dparam_with(&SeriesConfig::default(), a, b, c, z, which)
}

pub(crate) fn hyp1f2_dparam_with(
    cfg: &SeriesConfig,
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    which: Param,
) -> Result<SeriesResult> {
    Ok(sum_accurate(cfg, a, b, c, z, Some(which))?
        .d
        .expect("derivative requested"))
}

/// 0F1(; c; z) in double precision, for moderate |z|.
pub fn hyp0f1(c: f64, z: f64) -> f64 {
    let mut t = 1.0;
    let mut s = 1.0;
    let mut k = 0.0;
    loop {
        t *= z / ((c + k) * (k + 1.0));
        s += t;
        k += 1.0;
        if t.abs() <= 1e-17 * s.abs() && k > z.abs().sqrt() {
            return s;
        }
    }
}
