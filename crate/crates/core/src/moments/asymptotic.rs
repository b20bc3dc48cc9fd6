//! Large-j behaviour of the moments.
//!
//! With β = α + m and C = 2^{-2α-3m-1} r^m Γ(2β+2) / Γ(m+1):
//!
//! ```text
//! M_j  ≈ -J_m(r)/(2j²) + (-1)^j C cos((β+1)π) j^{-2β-2}
//! M̃_j ≈ (-1)^j C j^{-2β-2} [cos((β+1)π)(2ψ(2β+2) - 2 ln 2 - 2 ln j) - π sin((β+1)π)]
//! ```
//!
//! The j^{-2} term comes from the endpoint x = 1, the other from x = 0.

use std::f64::consts::{LN_2, PI};

use super::MomentParams;
use crate::quadrature::Kernel;
use crate::specfun::bessel::j_unchecked;
use crate::specfun::gamma::{cos_pi, lgamma, psi, sin_pi};

/// Asymptotic estimate of M_j (Plain) or M̃_j (Log) for j ≥ 1.
pub fn moment_asymptotic(p: &MomentParams, j: usize, kernel: Kernel) -> f64 {
    assert!(j >= 1, "moment_asymptotic needs j >= 1");
    let (r, m, a) = (p.r, p.m, p.alpha);
    let beta = a + m;
    let jf = j as f64;
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    // C j^{-2β-2} in logs to survive large j and β
    let ln_cj = (-2.0 * a - 3.0 * m - 1.0) * LN_2 + m * r.ln() + lgamma(2.0 * beta + 2.0)
        - lgamma(m + 1.0)
        - (2.0 * beta + 2.0) * jf.ln();
    let cj = ln_cj.exp();
    let (cb, sb) = (cos_pi(beta + 1.0), sin_pi(beta + 1.0));
    match kernel {
        Kernel::Plain => -0.5 * j_unchecked(m, r) / (jf * jf) + sign * cj * cb,
        Kernel::Log => {
            sign * cj * (cb * (2.0 * psi(2.0 * beta + 2.0) - 2.0 * LN_2 - 2.0 * jf.ln()) - PI * sb)
        }
    }
}
