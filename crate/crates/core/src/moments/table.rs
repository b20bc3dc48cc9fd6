use super::asymptotic::moment_asymptotic;
use super::banded::BandLu;
use super::base::{initial_log_moments, initial_moments};
use super::recurrence::{coefficients, log_recurrence_residual, log_rhs, recurrence_residual, OFFSETS};
use super::{MomentParams, MomentTable, Regime};
use crate::error::{Error, Result};
use crate::quadrature::Kernel;

/// Residual above which a computed table is rejected.
pub const MAX_RESIDUAL: f64 = 1e-9;
const K_CAP: usize = 1 << 16;
const REL_CHANGE: f64 = 1e-11;
const ABS_CHANGE: f64 = 1e-15;
// changes within this multiple of the propagated rounding count as settled
const NOISE: f64 = 16.0;

fn at(v: &[f64]) -> impl Fn(i64) -> f64 + '_ {
    move |i| v[i.unsigned_abs() as usize]
}

fn forward_plain(p: &MomentParams, init: [f64; 4], jmax: usize) -> Vec<f64> {
    let mut m = init.to_vec();
    m.resize(jmax.max(3) + 1, 0.0);
    for j in 0..jmax.saturating_sub(3) {
        let c = coefficients(p, j as i64);
        let mut s = 0.0;
        let mut lead = c[6];
        for (ck, k) in c.iter().zip(OFFSETS).take(6) {
            let idx = (j as i64 + k).unsigned_abs() as usize;
            if idx == j + 4 {
                lead += ck;
            } else {
                s += ck * m[idx];
            }
        }
        m[j + 4] = -s / lead;
    }
    m.truncate(jmax + 1);
    m
}

fn forward_log(p: &MomentParams, mm: &[f64], init: [f64; 4], jmax: usize) -> Vec<f64> {
    let mut l = init.to_vec();
    l.resize(jmax.max(3) + 1, 0.0);
    for j in 0..jmax.saturating_sub(3) {
        let c = coefficients(p, j as i64);
        let mut s = log_rhs(p, j as i64, at(mm));
        let mut lead = c[6];
        for (ck, k) in c.iter().zip(OFFSETS).take(6) {
            let idx = (j as i64 + k).unsigned_abs() as usize;
            if idx == j + 4 {
                lead += ck;
            } else {
                s -= ck * l[idx];
            }
        }
        l[j + 4] = s / lead;
    }
    l.truncate(jmax + 1);
    l
}

fn plain_residual(p: &MomentParams, m: &[f64]) -> f64 {
    let top = m.len() as i64 - 5;
    (0..=top)
        .map(|j| recurrence_residual(p, j, at(m)))
        .fold(0.0, f64::max)
}

fn log_residual(p: &MomentParams, m: &[f64], l: &[f64]) -> f64 {
    // the rhs at j reads M_{j+2}
    let top = (l.len() as i64 - 5).min(m.len() as i64 - 3);
    (0..=top)
        .map(|j| log_recurrence_residual(p, j, at(m), at(l)))
        .fold(0.0, f64::max)
}

fn check_table(p: &MomentParams, v: &[f64], bound: f64, residual: f64) -> Result<()> {
    if !(residual <= MAX_RESIDUAL) {
        return Err(Error::Instability(residual));
    }
    let limit = bound * (1.0 + 1e-9);
    for &x in v {
        if !x.is_finite() || (p.m >= 0.0 && x.abs() > limit) {
            return Err(Error::Instability(residual.max(x.abs())));
        }
    }
    Ok(())
}

/// Moments M_0..M_J by forward recursion; requires r ≥ 2J.
pub fn moments_forward(p: &MomentParams, j_max: usize) -> Result<MomentTable> {
    p.validate()?;
    if p.r < 2.0 * j_max as f64 {
        return Err(Error::Regime { r: p.r, j: j_max });
    }
    let m = forward_plain(p, initial_moments(p)?, j_max);
    let residual = plain_residual(p, &m);
    check_table(p, &m, 1.0 / (p.alpha + 1.0), residual)?;
    Ok(MomentTable {
        params: *p,
        j_max,
        m,
        mlog: None,
        regime: Regime::Forward,
        residual,
        k_used: None,
    })
}

fn end_value(p: &MomentParams, j: usize, kernel: Kernel) -> f64 {
    let v = moment_asymptotic(p, j, kernel);
    if v.abs() < 1e-300 || !v.is_finite() {
        0.0
    } else {
        v
    }
}

struct Solve {
    m: Vec<f64>,
    l: Option<Vec<f64>>,
    // response of M_0..M_head to one-ulp changes in the starting values
    noise_m: f64,
    noise_l: f64,
}

fn peak(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// One boundary value solve with truncation index K.
fn bvp_solve(
    p: &MomentParams,
    k: usize,
    head: usize,
    init: &[f64; 4],
    init_log: Option<&[f64; 4]>,
) -> Result<Solve> {
    // unknowns M_4..M_{K-2}, equations j = 2..=K-4
    let n = k - 5;
    let mut band = BandLu::new(n, 6, 2);
    let mut known: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for row in 0..n {
        let j = row as i64 + 2;
        let c = coefficients(p, j);
        for (ck, off) in c.iter().zip(OFFSETS) {
            let idx = (j + off).unsigned_abs() as usize;
            if (4..=k - 2).contains(&idx) {
                band.set(row, idx - 4, *ck);
            } else {
                known[row].push((idx, *ck));
            }
        }
    }
    band.factor()?;

    // solution for the given starting values, end values and log forcing
    let respond = |start: &[f64; 4], ends: [f64; 2], force: Option<&[f64]>| {
        let mut v = vec![0.0; k + 1];
        v[..4].copy_from_slice(start);
        v[k - 1] = ends[0];
        v[k] = ends[1];
        let mut r = vec![0.0; n];
        for row in 0..n {
            if let Some(f) = force {
                r[row] = log_rhs(p, row as i64 + 2, at(f));
            }
            for &(idx, ck) in &known[row] {
                r[row] -= ck * v[idx];
            }
        }
        band.solve(&mut r);
        v[4..=k - 2].copy_from_slice(&r);
        v
    };
    let unit = |i: usize, size: f64| {
        let mut e = [0.0; 4];
        e[i] = size;
        e
    };
    let ends = |kernel| [end_value(p, k - 1, kernel), end_value(p, k, kernel)];

    // response of the head to a rounding-sized residual in every row, with
    // coherent and with alternating signs
    let backward = |v: &[f64]| {
        let scale: Vec<f64> = (0..n)
            .map(|row| {
                let j = row as i64 + 2;
                let c = coefficients(p, j);
                let s: f64 = c
                    .iter()
                    .zip(OFFSETS)
                    .map(|(ck, off)| (ck * v[(j + off).unsigned_abs() as usize]).abs())
                    .sum();
                f64::EPSILON * s
            })
            .collect();
        let mut worst = 0.0f64;
        for alternate in [false, true] {
            let mut r: Vec<f64> = scale
                .iter()
                .enumerate()
                .map(|(i, s)| if alternate && i % 2 == 1 { -s } else { *s })
                .collect();
            band.solve(&mut r);
            worst = worst.max(peak(&r[..head.saturating_sub(4).min(n)]));
        }
        worst
    };

    let mm = respond(init, ends(Kernel::Plain), None);
    let ulp_m = f64::EPSILON * peak(init);
    let dm: Vec<Vec<f64>> = (0..4).map(|i| respond(&unit(i, ulp_m), [0.0; 2], None)).collect();
    let noise_m = dm.iter().map(|h| peak(&h[..head])).sum::<f64>() + backward(&mm);

    let (ml, noise_l) = match init_log {
        None => (None, 0.0),
        Some(il) => {
            let ml = respond(il, ends(Kernel::Log), Some(&mm));
            let ulp_l = f64::EPSILON * peak(il);
            let mut noise = backward(&ml);
            for (i, h) in dm.iter().enumerate() {
                noise += peak(&respond(&[0.0; 4], [0.0; 2], Some(h))[..head]);
                noise += peak(&respond(&unit(i, ulp_l), [0.0; 2], None)[..head]);
            }
            (Some(ml), noise)
        }
    };
    Ok(Solve {
        m: mm,
        l: ml,
        noise_m,
        noise_l,
    })
}

fn settled(old: &[f64], new: &[f64], floor: f64) -> bool {
    let big = peak(new);
    old.iter()
        .zip(new)
        .all(|(a, b)| (a - b).abs() <= REL_CHANGE * b.abs() + ABS_CHANGE * big + floor)
}

fn bvp(p: &MomentParams, j_max: usize, with_log: bool) -> Result<MomentTable> {
    p.validate()?;
    let init = initial_moments(p)?;
    let init_log = if with_log {
        Some(initial_log_moments(p)?)
    } else {
        None
    };
    let head = j_max.max(3) + 1;
    let mut k = (2 * j_max).max((2.0 * p.r).ceil() as usize) + 16;
    k = k.min(K_CAP);
    let mut prev: Option<Solve> = None;
    let mut change = f64::NAN;
    loop {
        let s = bvp_solve(p, k, head, &init, init_log.as_ref())?;
        if let Some(o) = &prev {
            change = o.m[..head].iter().zip(&s.m[..head]).fold(0.0, |c, (a, b)| c.max((a - b).abs()));
            let ok_m = settled(&o.m[..head], &s.m[..head], NOISE * o.noise_m.max(s.noise_m));
            let ok_l = match (&o.l, &s.l) {
                (Some(a), Some(b)) => {
                    settled(&a[..head], &b[..head], NOISE * o.noise_l.max(s.noise_l))
                }
                _ => true,
            };
            if ok_m && ok_l {
                let (mm, ml) = (s.m, s.l);
                let m: Vec<f64> = mm[..=j_max].to_vec();
                let mlog: Option<Vec<f64>> = ml.as_ref().map(|v| v[..=j_max].to_vec());
                // residual over the returned range plus a margin inside the solve
                let span = (j_max + 6).min(k - 4);
                let mut residual = plain_residual(p, &mm[..=span]);
                if let Some(l) = &ml {
                    residual = residual.max(log_residual(p, &mm[..=span], &l[..=span]));
                }
                check_table(p, &m, 1.0 / (p.alpha + 1.0), residual)?;
                if let Some(l) = &mlog {
                    check_table(p, l, (p.alpha + 1.0).powi(-2), residual)?;
                }
                return Ok(MomentTable {
                    params: *p,
                    j_max,
                    m,
                    mlog,
                    regime: Regime::BoundaryValue,
                    residual,
                    k_used: Some(k),
                });
            }
        }
        if k >= K_CAP {
            return Err(Error::NonConvergence {
                terms: k,
                tail: change,
            });
        }
        prev = Some(s);
        k = (2 * k).min(K_CAP);
    }
}

/// Moments M_0..M_J from the banded boundary value problem.
pub fn moments_bvp(p: &MomentParams, j_max: usize) -> Result<MomentTable> {
    bvp(p, j_max, false)
}

/// Log moments M̃_0..M̃_J, reusing `table` in the forward regime.
pub fn log_moments(p: &MomentParams, j_max: usize, table: &MomentTable) -> Result<Vec<f64>> {
    if let Some(l) = &table.mlog {
        if l.len() > j_max && table.params == *p {
            return Ok(l[..=j_max].to_vec());
        }
    }
    if p.r >= 2.0 * j_max as f64 {
        if table.params != *p || table.m.len() + 2 < j_max + 1 {
            return Err(Error::Parameter(
                "moment table does not cover the requested log moments".into(),
            ));
        }
        let l = forward_log(p, &table.m, initial_log_moments(p)?, j_max);
        let residual = log_residual(p, &table.m, &l);
        check_table(p, &l, (p.alpha + 1.0).powi(-2), residual)?;
        return Ok(l);
    }
    Ok(bvp(p, j_max, true)?.mlog.expect("log moments requested"))
}

/// Moment table in the regime chosen by r ≥ 2J, or the forced one.
pub fn moment_table(
    p: &MomentParams,
    j_max: usize,
    with_log: bool,
    force: Option<Regime>,
) -> Result<MomentTable> {
    let regime = force.unwrap_or(if p.r >= 2.0 * j_max as f64 {
        Regime::Forward
    } else {
        Regime::BoundaryValue
    });
    match regime {
        Regime::BoundaryValue => bvp(p, j_max, with_log),
        Regime::Forward => {
            let mut t = moments_forward(p, j_max)?;
            if with_log {
                let l = forward_log(p, &t.m, initial_log_moments(p)?, j_max);
                let residual = log_residual(p, &t.m, &l);
                check_table(p, &l, (p.alpha + 1.0).powi(-2), residual)?;
                t.residual = t.residual.max(residual);
                t.mlog = Some(l);
            }
            Ok(t)
        }
    }
}
