//! The order-8 recurrence satisfied by the moments,
//!
//! ```text
//! Σ_{k ∈ {-4,-2,-1,0,1,2,4}} c_k(j) M_{j+k} = 0
//! ```
//!
//! and its α-derivative for the log moments, whose right hand side is
//! `-Σ_k ∂c_k/∂α M_{j+k}`.

use super::MomentParams;

/// Offsets in the recurrence, in the order of [`coefficients`].
pub const OFFSETS: [i64; 7] = [-4, -2, -1, 0, 1, 2, 4];

/// c_k(j) for k in [`OFFSETS`].
pub fn coefficients(p: &MomentParams, j: i64) -> [f64; 7] {
    let (r, m, a) = (p.r, p.m, p.alpha);
    let j = j as f64;
    let r2 = r * r;
    let d = m * m - a * a;
    let e = 2.0 * a - 1.0;
    let c4 = r2 / 16.0;
    let c2 = (j + 3.0) * (j + 3.0 + 2.0 * a) - d - r2 / 4.0;
    let c1 = 4.0 * d - 2.0 * (j + 2.0) * e;
    let c0 = -(2.0 * (j * j - 4.0) + 6.0 * d - 2.0 * e - 3.0 * r2 / 8.0);
    let cm1 = 4.0 * d + 2.0 * (j - 2.0) * e;
    let cm2 = (j - 3.0) * (j - 3.0 - 2.0 * a) - d - r2 / 4.0;
    [c4, cm2, cm1, c0, c1, c2, c4]
}

/// Right hand side of the log recurrence at j, given M with M_{-i} = M_i.
pub fn log_rhs(p: &MomentParams, j: i64, m: impl Fn(i64) -> f64) -> f64 {
    let a = p.alpha;
    let jf = j as f64;
    -2.0 * (a + jf + 3.0) * m(j + 2) + 4.0 * (2.0 * a + jf + 2.0) * m(j + 1)
        - 4.0 * (3.0 * a + 1.0) * m(j)
        + 4.0 * (2.0 * a - jf + 2.0) * m(j - 1)
        + 2.0 * (jf - a - 3.0) * m(j - 2)
}

/// Relative residual |Σ c_k M_{j+k}| / Σ |c_k M_{j+k}| of the plain recurrence.
pub fn recurrence_residual(p: &MomentParams, j: i64, m: impl Fn(i64) -> f64) -> f64 {
    let c = coefficients(p, j);
    let (mut s, mut a) = (0.0, 0.0);
    for (ck, k) in c.iter().zip(OFFSETS) {
        let t = ck * m(j + k);
        s += t;
        a += t.abs();
    }
    if a == 0.0 {
        0.0
    } else {
        s.abs() / a
    }
}

/// Relative residual of the log recurrence given both families.
pub fn log_recurrence_residual(
    p: &MomentParams,
    j: i64,
    m: impl Fn(i64) -> f64,
    ml: impl Fn(i64) -> f64,
) -> f64 {
    let c = coefficients(p, j);
    let (mut s, mut a) = (0.0, 0.0);
    for (ck, k) in c.iter().zip(OFFSETS) {
        let t = ck * ml(j + k);
        s += t;
        a += t.abs();
    }
    let rhs = log_rhs(p, j, &m);
    let scale = a + rhs.abs();
    if scale == 0.0 {
        0.0
    } else {
        (s - rhs).abs() / scale
    }
}
