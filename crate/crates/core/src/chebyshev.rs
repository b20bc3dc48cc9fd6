//! Clenshaw-Curtis points, Chebyshev interpolation on [0, b], and the
//! confluent interpolant that also matches endpoint derivatives.
//!
//! Series are stored as plain coefficient vectors: `P(x) = Σ c_j T_j(2x/b - 1)`.
//! For [`ChebInterp`] the halving of the first and last DCT coefficient is
//! already applied.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Interpolant P_N f at the Clenshaw-Curtis points of [0, b].
#[derive(Debug, Clone, PartialEq)]
pub struct ChebInterp {
    pub b: f64,
    pub n: usize,
    pub coeffs: Vec<f64>,
}

/// Interpolant P_{N+2s} f matching values at the interior nodes and
/// derivatives of orders 0..=s at both endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteInterp {
    pub b: f64,
    pub n: usize,
    pub s: usize,
    pub coeffs: Vec<f64>,
    /// 2-norm condition number of the row-equilibrated collocation matrix.
    pub condition: f64,
}

/// Anything that is a Chebyshev series on [0, b].
pub trait ChebSeries {
    fn interval_end(&self) -> f64;
    fn coeffs(&self) -> &[f64];
}

impl ChebSeries for ChebInterp {
    fn interval_end(&self) -> f64 {
        self.b
    }
    fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

impl ChebSeries for HermiteInterp {
    fn interval_end(&self) -> f64 {
        self.b
    }
    fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// cos(kπ/N) written as a sine so the values are exactly antisymmetric.
pub(crate) fn cheb_node(k: usize, n: usize) -> f64 {
    let num = n as f64 - 2.0 * k as f64;
    (num * PI / (2.0 * n as f64)).sin()
}

/// Clenshaw-Curtis points `x_k = b/2 + (b/2) cos(kπ/N)`, k = 0..=N, descending.
pub fn cc_points(n: usize, b: f64) -> Vec<f64> {
    assert!(n >= 1, "cc_points needs N >= 1");
    (0..=n).map(|k| 0.5 * b + 0.5 * b * cheb_node(k, n)).collect()
}

fn check_b(b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("interval end b = {b} must be > 0")))
    }
}

/// Chebyshev coefficients of the interpolant through `samples` taken at
/// `cc_points(samples.len() - 1, b)`.
pub fn cheb_fit(samples: &[f64], b: f64) -> Result<ChebInterp> {
    check_b(b)?;
    if samples.len() < 2 {
        return Err(Error::Parameter("cheb_fit needs at least 2 samples".into()));
    }
    let n = samples.len() - 1;
    // DCT-I through the FFT of the even extension of length 2N
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(2 * n);
    buf.extend(samples.iter().map(|&v| Complex::new(v, 0.0)));
    buf.extend(samples[1..n].iter().rev().map(|&v| Complex::new(v, 0.0)));
    FftPlanner::new().plan_fft_forward(2 * n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let mut coeffs: Vec<f64> = buf[..=n].iter().map(|c| c.re * scale).collect();
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    Ok(ChebInterp { b, n, coeffs })
}

/// Clenshaw evaluation of Σ c_j T_j(2x/b - 1), no domain check.
pub fn clenshaw(coeffs: &[f64], b: f64, x: f64) -> f64 {
    let t = 2.0 * x / b - 1.0;
    let t2 = 2.0 * t;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + t2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs.first().copied().unwrap_or(0.0) + t * b1 - b2
}

/// Evaluate a series at x in [0, b].
pub fn cheb_eval<S: ChebSeries + ?Sized>(p: &S, x: f64) -> Result<f64> {
    let b = p.interval_end();
    let slack = 1e-14 * b;
    if !(x >= -slack && x <= b + slack) {
        return Err(Error::Domain(format!("x = {x} outside [0, {b}]")));
    }
    Ok(clenshaw(p.coeffs(), b, x))
}

/// Coefficients of d/dx of the series on [0, b].
pub fn cheb_derivative(coeffs: &[f64], b: f64) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n - 1];
    // d_{j-1} = d_{j+1} + 2 j c_j
    for j in (1..n).rev() {
        let up = if j + 1 < n - 1 { d[j + 1] } else { 0.0 };
        d[j - 1] = up + 2.0 * j as f64 * coeffs[j];
    }
    d[0] *= 0.5;
    let f = 2.0 / b;
    d.iter_mut().for_each(|v| *v *= f);
    d
}

/// Confluent interpolant of degree N + 2s.
///
/// `samples` are f at `cc_points(n, b)`; `derivs0[k]` and `derivsb[k]` are
/// f^(k)(0) and f^(k)(b) for k = 0..=s. The endpoint samples are ignored in
/// favour of `derivs0[0]` and `derivsb[0]`.
pub fn hermite_fit(
    samples: &[f64],
    derivs0: &[f64],
    derivsb: &[f64],
    n: usize,
    s: usize,
    b: f64,
) -> Result<HermiteInterp> {
    check_b(b)?;
    if n < 1 || samples.len() != n + 1 {
        return Err(Error::Parameter(format!(
            "hermite_fit needs N >= 1 and N + 1 samples (N = {n}, got {})",
            samples.len()
        )));
    }
    if derivs0.len() != s + 1 || derivsb.len() != s + 1 {
        return Err(Error::Parameter(format!(
            "hermite_fit needs {} endpoint derivatives on each side",
            s + 1
        )));
    }
    let dim = n + 2 * s + 1;
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);

    for k in 1..n {
        let t = cheb_node(k, n);
        let row = k - 1;
        // T_j(t) by the three-term recurrence
        let (mut tm, mut tc) = (1.0, t);
        for j in 0..dim {
            let v = match j {
                0 => 1.0,
                1 => t,
                _ => {
                    let tn = 2.0 * t * tc - tm;
                    tm = tc;
                    tc = tn;
                    tn
                }
            };
            a[(row, j)] = v;
        }
        rhs[row] = samples[k];
    }

    let base = n - 1;
    for j in 0..dim {
        let mut unit = vec![0.0; j + 1];
        unit[j] = 1.0;
        for k in 0..=s {
            a[(base + 2 * k, j)] = clenshaw(&unit, b, 0.0);
            a[(base + 2 * k + 1, j)] = clenshaw(&unit, b, b);
            unit = cheb_derivative(&unit, b);
        }
    }
    for k in 0..=s {
        rhs[base + 2 * k] = derivs0[k];
        rhs[base + 2 * k + 1] = derivsb[k];
    }

    for i in 0..dim {
        let m = a.row(i).iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if m > 0.0 {
            for j in 0..dim {
                a[(i, j)] /= m;
            }
            rhs[i] /= m;
        }
    }

    let sv = a.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition < 1e14) {
        return Err(Error::Singular(condition));
    }
    let coeffs = a
        .lu()
        .solve(&rhs)
        .ok_or(Error::Singular(condition))?
        .iter()
        .copied()
        .collect();
    Ok(HermiteInterp {
        b,
        n,
        s,
        coeffs,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(f: impl Fn(f64) -> f64, n: usize, b: f64) -> Vec<f64> {
        cc_points(n, b).into_iter().map(f).collect()
    }

    #[test]
    fn points() {
        assert_eq!(cc_points(2, 2.0), vec![2.0, 1.0, 0.0]);
        assert_eq!(cc_points(1, 1.0), vec![1.0, 0.0]);
        let p = cc_points(4, 1.0);
        let r2 = 2f64.sqrt();
        let want = [1.0, (2.0 + r2) / 4.0, 0.5, (2.0 - r2) / 4.0, 0.0];
        for (a, b) in p.iter().zip(want) {
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn fit_reproduces_simple_series() {
        for n in [1, 2, 5, 16] {
            let c = cheb_fit(&sample(|_| 1.0, n, 3.0), 3.0).unwrap();
            assert!((c.coeffs[0] - 1.0).abs() < 1e-15);
            assert!(c.coeffs[1..].iter().all(|v| v.abs() < 1e-15));
            let t1 = cheb_fit(&sample(|x| 2.0 * x / 3.0 - 1.0, n, 3.0), 3.0).unwrap();
            for (j, v) in t1.coeffs.iter().enumerate() {
                let want = if j == 1 { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-15, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn exp_dense_grid() {
        let p = cheb_fit(&sample(f64::exp, 16, 1.0), 1.0).unwrap();
        let worst = (0..1000)
            .map(|i| {
                let x = i as f64 / 999.0;
                (cheb_eval(&p, x).unwrap() - x.exp()).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1e-14, "{worst}");
    }

    #[test]
    fn eval_basics() {
        let p = ChebInterp {
            b: 2.0,
            n: 0,
            coeffs: vec![1.0],
        };
        assert_eq!(cheb_eval(&p, 0.7).unwrap(), 1.0);
        let t5 = ChebInterp {
            b: 2.0,
            n: 5,
            coeffs: vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        };
        assert!((cheb_eval(&t5, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(cheb_eval(&t5, 2.1).is_err());
        let xs = cc_points(12, 1.0);
        let f = |x: f64| (3.0 * x).sin();
        let q = cheb_fit(&sample(f, 12, 1.0), 1.0).unwrap();
        for x in xs {
            assert!((cheb_eval(&q, x).unwrap() - f(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative() {
        let d = cheb_derivative(&[0.0, 1.0], 4.0);
        assert_eq!(d, vec![0.5]);
        assert_eq!(cheb_derivative(&[3.0], 1.0), vec![0.0]);
        let p = cheb_fit(&sample(|x| x * x * x, 6, 1.0), 1.0).unwrap();
        let d = cheb_derivative(&p.coeffs, 1.0);
        for i in 0..17 {
            let x = i as f64 / 16.0;
            assert!((clenshaw(&d, 1.0, x) - 3.0 * x * x).abs() < 1e-12);
        }
        let e = cheb_fit(&sample(f64::exp, 20, 1.0), 1.0).unwrap();
        let de = cheb_derivative(&e.coeffs, 1.0);
        for i in 0..=200 {
            let x = i as f64 / 200.0;
            assert!((clenshaw(&de, 1.0, x) - x.exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn aliasing_at_nodes() {
        let n = 6;
        for k in 0..=n {
            let t = cheb_node(k, n);
            for j in 0..=n {
                let tj = (j as f64 * t.acos()).cos();
                for p in 1..=2 {
                    for m in [2 * p * n + j, 2 * p * n - j] {
                        let tm = (m as f64 * t.acos()).cos();
                        assert!((tm - tj).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn hermite_reproduces_polynomials() {
        let (n, s, b) = (4, 1, 1.0);
        let h = hermite_fit(
            &sample(|x| x * x, n, b),
            &[0.0, 0.0],
            &[1.0, 2.0],
            n,
            s,
            b,
        )
        .unwrap();
        let c = cheb_fit(&sample(|x| x * x, n, b), b).unwrap();
        for j in 0..=n + 2 * s {
            let want = c.coeffs.get(j).copied().unwrap_or(0.0);
            assert!((h.coeffs[j] - want).abs() < 1e-13, "j={j}");
        }
    }

    #[test]
    fn hermite_conditions_exp() {
        let (n, s, b) = (8, 2, 1.0);
        let e1 = 1f64.exp();
        let h = hermite_fit(&sample(f64::exp, n, b), &[1.0; 3], &[e1; 3], n, s, b).unwrap();
        for (k, x) in cc_points(n, b).into_iter().enumerate() {
            assert!((cheb_eval(&h, x).unwrap() - x.exp()).abs() < 1e-9, "node {k}");
        }
        let mut c = h.coeffs.clone();
        for _ in 0..=s {
            assert!((clenshaw(&c, b, 0.0) - 1.0).abs() < 1e-9);
            assert!((clenshaw(&c, b, b) - e1).abs() < 1e-9 * e1);
            c = cheb_derivative(&c, b);
        }
        assert!(h.condition < 1e6);
    }

    #[test]
    fn hermite_beats_plain_for_sin() {
        let (n, b) = (8, 1.0);
        let f = sample(f64::sin, n, b);
        let c1 = 1f64.cos();
        let h = hermite_fit(&f, &[0.0, 1.0], &[1f64.sin(), c1], n, 1, b).unwrap();
        let p = cheb_fit(&f, b).unwrap();
        let err = |s: &dyn ChebSeries| {
            (0..=2000)
                .map(|i| {
                    let x = i as f64 / 2000.0;
                    (clenshaw(s.coeffs(), b, x) - x.sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(&h) < err(&p));
    }

    #[test]
    fn hermite_s0_is_plain_interpolation() {
        let (n, b) = (7, 2.0);
        let f = sample(|x| (x * 1.3).cos(), n, b);
        let h = hermite_fit(&f, &[f[n]], &[f[0]], n, 0, b).unwrap();
        let p = cheb_fit(&f, b).unwrap();
        for j in 0..=n {
            assert!((h.coeffs[j] - p.coeffs[j]).abs() < 1e-14);
        }
    }
}
