use std::f64::consts::PI;

use super::near_nonpositive_int;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else if r <= 1.25 {
        (PI * (1.0 - r)).sin()
    } else if r <= 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument (Γ(z+1))
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Γ(x) without the pole check; returns ±inf or nan at poles.
pub(crate) fn gam(x: f64) -> f64 {
    if x < 0.5 {
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::NAN;
        }
        return PI / (s * gam(1.0 - x));
    }
    if x == x.floor() && x <= 30.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power to keep t^(z+0.5) finite up to the overflow limit
    let h = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * h * (h * (-t).exp()) * lanczos_sum(z)
}

/// Gamma function; errors at non-positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if near_nonpositive_int(x) {
        return Err(Error::Pole { func: "gamma", at: x });
    }
    Ok(gam(x))
}

/// ln|Γ(x)|.
pub fn lgamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - lgamma(1.0 - x);
    }
    if x < 15.0 {
        return gam(x).abs().ln();
    }
    let x2 = x * x;
    let series = 1.0 / (12.0 * x)
        * (1.0 - 1.0 / (30.0 * x2) * (1.0 - 2.0 / (7.0 * x2) * (1.0 - 3.0 / (4.0 * x2))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// 1/Γ(x), entire, with exact zeros at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x < 0.5 {
        return sin_pi(x) * gam(1.0 - x) / PI;
    }
    if x > 171.7 {
        return 0.0;
    }
    1.0 / gam(x)
}

/// d/dx [1/Γ(x)], finite everywhere.
pub fn rgamma_deriv(x: f64) -> f64 {
    if x >= 0.5 {
        return -psi(x) * rgamma(x);
    }
    let g = gam(1.0 - x);
    g * (cos_pi(x) - sin_pi(x) * psi(1.0 - x) / PI)
}

pub(crate) fn psi(mut x: f64) -> f64 {
    if x <= 0.0 {
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::NAN;
        }
        return psi(1.0 - x) - PI * cos_pi(x) / s;
    }
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    let tail = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    acc + x.ln() - 0.5 / x - tail
}

/// Digamma ψ₀(x) = Γ'(x)/Γ(x); errors at non-positive integers.
pub fn digamma(x: f64) -> Result<f64> {
    if near_nonpositive_int(x) {
        return Err(Error::Pole { func: "digamma", at: x });
    }
    Ok(psi(x))
}
