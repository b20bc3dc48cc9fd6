//! Named test functions with closed-form derivatives.
//!
//! Ids: `one`, `x`, `exp`, `runge`, `reciprocal`, `cos5`, `abs_power:p`,
//! `cheb:j`, `monomial:k`. `runge` is 1/(1+25t²) and `cheb:j` is T_j(t),
//! both in the mapped variable t = 2x/b − 1.

use std::fmt;
use std::str::FromStr;

use crate::chebyshev::{cheb_derivative, clenshaw};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    One,
    X,
    Exp,
    Runge,
    Reciprocal,
    Cos5,
    AbsPower(f64),
    Cheb(usize),
    Monomial(u32),
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::One => f.write_str("one"),
            TestFunction::X => f.write_str("x"),
            TestFunction::Exp => f.write_str("exp"),
            TestFunction::Runge => f.write_str("runge"),
            TestFunction::Reciprocal => f.write_str("reciprocal"),
            TestFunction::Cos5 => f.write_str("cos5"),
            TestFunction::AbsPower(p) => write!(f, "abs_power:{p}"),
            TestFunction::Cheb(j) => write!(f, "cheb:{j}"),
            TestFunction::Monomial(k) => write!(f, "monomial:{k}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<TestFunction> {
        let bad = || Error::Parameter(format!("unknown function '{s}'"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let f = match (name, arg) {
            ("one", None) => TestFunction::One,
            ("x", None) => TestFunction::X,
            ("exp", None) => TestFunction::Exp,
            ("runge", None) => TestFunction::Runge,
            ("reciprocal", None) => TestFunction::Reciprocal,
            ("cos5", None) => TestFunction::Cos5,
            ("abs_power", None) => TestFunction::AbsPower(3.0),
            ("abs_power", Some(a)) => {
                let p: f64 = a.parse().map_err(|_| bad())?;
                if !(p >= 0.0 && p.is_finite()) {
                    return Err(bad());
                }
                TestFunction::AbsPower(p)
            }
            ("cheb", Some(a)) => TestFunction::Cheb(a.parse().map_err(|_| bad())?),
            ("monomial", Some(a)) => TestFunction::Monomial(a.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(f)
    }
}

fn falling(p: f64, k: u32) -> f64 {
    (0..k).map(|i| p - i as f64).product()
}

/// d^n/dt^n of 1/(1+25t²) for n = 0..=n_max, from
/// (1+25t²) g^(n) + 50 n t g^(n-1) + 25 n(n-1) g^(n-2) = 0.
fn runge_derivs(t: f64, n_max: u32) -> Vec<f64> {
    let d = 1.0 + 25.0 * t * t;
    let mut g = vec![1.0 / d];
    for n in 1..=n_max as usize {
        let nf = n as f64;
        let mut s = 50.0 * nf * t * g[n - 1];
        if n >= 2 {
            s += 25.0 * nf * (nf - 1.0) * g[n - 2];
        }
        g.push(-s / d);
    }
    g
}

impl TestFunction {
    /// Every registry id with its default argument.
    pub fn names() -> &'static [&'static str] {
        &["one", "x", "exp", "runge", "reciprocal", "cos5", "abs_power:p", "cheb:j", "monomial:k"]
    }

    pub fn eval(&self, x: f64, b: f64) -> f64 {
        self.deriv(0, x, b)
    }

    /// k-th derivative in x on [0, b].
    pub fn deriv(&self, k: u32, x: f64, b: f64) -> f64 {
        match *self {
            TestFunction::One => (k == 0) as u8 as f64,
            TestFunction::X => match k {
                0 => x,
                1 => 1.0,
                _ => 0.0,
            },
            TestFunction::Exp => x.exp(),
            TestFunction::Runge => {
                let t = 2.0 * x / b - 1.0;
                runge_derivs(t, k)[k as usize] * (2.0 / b).powi(k as i32)
            }
            TestFunction::Reciprocal => {
                let fact: f64 = (1..=k).map(|i| i as f64).product();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * fact / (1.0 + x).powi(k as i32 + 1)
            }
            TestFunction::Cos5 => {
                let ph = 5.0 * x + 0.5 * std::f64::consts::PI * (k % 4) as f64;
                5f64.powi(k as i32) * ph.cos()
            }
            TestFunction::AbsPower(p) => {
                let d = x - 0.5;
                let c = falling(p, k);
                if c == 0.0 {
                    return 0.0;
                }
                let sign = if d < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                sign * c * d.abs().powf(p - k as f64)
            }
            TestFunction::Cheb(j) => {
                let mut c = vec![0.0; j + 1];
                c[j] = 1.0;
                for _ in 0..k {
                    if c.len() < 2 {
                        return 0.0;
                    }
                    c = cheb_derivative(&c, b);
                }
                clenshaw(&c, b, x)
            }
            TestFunction::Monomial(n) => {
                if k > n {
                    0.0
                } else {
                    falling(n as f64, k) * x.powi((n - k) as i32)
                }
            }
        }
    }

    /// Derivatives of orders 0..=s at x.
    pub fn derivs(&self, s: u32, x: f64, b: f64) -> Vec<f64> {
        (0..=s).map(|k| self.deriv(k, x, b)).collect()
    }
}
