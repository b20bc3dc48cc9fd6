//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are still run and still print
//! FAIL when they fail; only they are kept out of the exit status.

mod common;

use std::time::Instant;

use ccf_bessel::bounds::{explicit_ccf_bound, interp_error_bound, sup_error, AnalyticityInfo, SUP_GRID};
use ccf_bessel::chebyshev::{cc_points, cheb_derivative, cheb_fit, clenshaw};
use ccf_bessel::moments::{
    base_moment_dg, base_moment_g, log_recurrence_residual, moment_table, recurrence_residual,
    MomentParams, Regime,
};
use ccf_bessel::oracle::golden::{MOMENT_ALPHA, MOMENT_J, MOMENT_M, MOMENT_R};
use ccf_bessel::oracle::GoldenRecord;
use ccf_bessel::quadrature::ccf_fn;
use ccf_bessel::registry::TestFunction;
use ccf_bessel::specfun::{bessel_j, hyp1f2, hyp1f2_dparam, lommel_s, lommel_s_dmu, Param};
use ccf_bessel::{hccf, IntegralSpec, Kernel};
use common::{golden, golden_value, loglog_slope};

const KNOWN_UNATTAINABLE: &[u32] = &[7, 8];

const C1_REL: f64 = 1e-7;
const C1_ABS: f64 = 1e-12;
const C1_SMALL: f64 = 1e-5;
const C2_TOL: f64 = 1e-6;
const C3_REL: f64 = 1e-9;
const C4_TARGET: f64 = -1.5;
const C4_BAND: f64 = 0.3;
const C5_MAX: f64 = -1.5;
const C6_TARGET: f64 = -4.0;
const C7_TARGET: f64 = -3.5;
const C67_BAND: f64 = 0.5;
const C8_GAIN: f64 = 0.7;
const C9_ROUNDING: f64 = 64.0 * f64::EPSILON;
const C10_RHO: f64 = 3.5;
const C11_TOL: f64 = 1e-6;
const C12_TOL: f64 = 1e-11;

const OMEGAS: [f64; 4] = [100.0, 200.0, 400.0, 800.0];

type Outcome = (bool, String);

fn moment_grid() -> impl Iterator<Item = (f64, f64, f64)> {
    MOMENT_R
        .into_iter()
        .flat_map(|r| MOMENT_M.into_iter().flat_map(move |m| MOMENT_ALPHA.into_iter().map(move |a| (r, m, a))))
}

fn cheb_spec(r: f64, m: f64, a: f64, kernel: Kernel) -> IntegralSpec {
    IntegralSpec::new(1.0, a, m, r, kernel).unwrap()
}

fn golden_moments(g: &[GoldenRecord], r: f64, m: f64, a: f64, kernel: Kernel, upto: usize) -> Vec<f64> {
    let spec = cheb_spec(r, m, a, kernel);
    (0..=upto).map(|j| golden_value(g, TestFunction::Cheb(j), &spec)).collect()
}

fn c1(g: &[GoldenRecord]) -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = 0;
    let mut count = 0;
    for (r, m, a) in moment_grid() {
        let p = MomentParams::new(r, m, a).unwrap();
        let t = moment_table(&p, MOMENT_J, true, None).unwrap();
        for (kernel, ours) in [(Kernel::Plain, &t.m), (Kernel::Log, t.mlog.as_ref().unwrap())] {
            let want = golden_moments(g, r, m, a, kernel, MOMENT_J);
            for j in 0..=MOMENT_J {
                let d = (ours[j] - want[j]).abs();
                count += 1;
                let ok = if want[j].abs() < C1_SMALL { d <= C1_ABS } else { d <= C1_REL * want[j].abs() };
                if want[j].abs() >= C1_SMALL {
                    worst = worst.max(d / want[j].abs());
                }
                if !ok {
                    bad += 1;
                }
            }
        }
    }
    (bad == 0, format!("{count} moments, {bad} outside tolerance, worst rel {worst:.2e}"))
}

fn c2(g: &[GoldenRecord]) -> Outcome {
    let mut worst = 0.0f64;
    for (r, m, a) in [(20.0, 0.0, -0.5), (20.0, 1.0, 0.5)] {
        let p = MomentParams::new(r, m, a).unwrap();
        let mp = golden_moments(g, r, m, a, Kernel::Plain, MOMENT_J);
        let ml = golden_moments(g, r, m, a, Kernel::Log, MOMENT_J);
        let at = |v: &Vec<f64>| {
            let v = v.clone();
            move |i: i64| v[i.unsigned_abs() as usize]
        };
        for j in 4..=12 {
            worst = worst.max(recurrence_residual(&p, j, at(&mp)));
            worst = worst.max(log_recurrence_residual(&p, j, at(&mp), at(&ml)));
        }
    }
    (worst <= C2_TOL, format!("max residual {worst:.2e}"))
}

fn c3() -> Outcome {
    let mut worst = 0.0f64;
    let mut tables = 0;
    for r in [5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 400.0] {
        for m in MOMENT_M {
            for a in MOMENT_ALPHA {
                let p = MomentParams::new(r, m, a).unwrap();
                let jmax = (r / 2.0).floor() as usize;
                let f = moment_table(&p, jmax, true, Some(Regime::Forward)).unwrap();
                let b = moment_table(&p, jmax, true, Some(Regime::BoundaryValue)).unwrap();
                for (x, y) in [(&f.m, &b.m), (f.mlog.as_ref().unwrap(), b.mlog.as_ref().unwrap())] {
                    let scale = x.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                    let d = x.iter().zip(y.iter()).fold(0.0f64, |s, (u, v)| s.max((u - v).abs()));
                    worst = worst.max(d / scale);
                }
                tables += 1;
            }
        }
    }
    (worst <= C3_REL, format!("{tables} parameter sets, max |forward - bvp| / max|M| = {worst:.2e}"))
}

fn omega_errors(g: &[GoldenRecord], alpha: f64, kernel: Kernel, s: usize) -> Vec<f64> {
    let f = TestFunction::Exp;
    OMEGAS
        .iter()
        .map(|&w| {
            let spec = IntegralSpec::new(1.0, alpha, 0.0, w, kernel).unwrap();
            let want = golden_value(g, f, &spec);
            let xs = cc_points(8, 1.0);
            let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x, 1.0)).collect();
            let got = if s == 0 {
                ccf_fn(&spec, |x| f.eval(x, 1.0), 8).unwrap().value
            } else {
                let d0 = f.derivs(s as u32, 0.0, 1.0);
                let db = f.derivs(s as u32, 1.0, 1.0);
                hccf(&spec, &ys, &d0, &db, 8, s).unwrap().value
            };
            (got - want).abs()
        })
        .collect()
}

fn fmt_errs(e: &[f64]) -> String {
    e.iter().map(|v| format!("{v:.2e}")).collect::<Vec<_>>().join(" ")
}

fn c4(g: &[GoldenRecord]) -> Outcome {
    let e = omega_errors(g, -0.5, Kernel::Plain, 0);
    let s = loglog_slope(&OMEGAS, &e);
    ((s - C4_TARGET).abs() <= C4_BAND, format!("slope {s:.3} (errors {})", fmt_errs(&e)))
}

fn c5(g: &[GoldenRecord]) -> Outcome {
    let e = omega_errors(g, 0.0, Kernel::Log, 0);
    let s = loglog_slope(&OMEGAS, &e);
    (s <= C5_MAX, format!("slope {s:.3} (errors {})", fmt_errs(&e)))
}

fn n_rate(g: &[GoldenRecord], alpha: f64, target: f64) -> Outcome {
    let f = TestFunction::AbsPower(3.0);
    let spec = IntegralSpec::new(1.0, alpha, 0.0, 10.0, Kernel::Plain).unwrap();
    let want = golden_value(g, f, &spec);
    let ns = [8.0, 16.0, 32.0, 64.0];
    let e: Vec<f64> = ns
        .iter()
        .map(|&n| (ccf_fn(&spec, |x| f.eval(x, 1.0), n as usize).unwrap().value - want).abs())
        .collect();
    let s = loglog_slope(&ns, &e);
    ((s - target).abs() <= C67_BAND, format!("slope {s:.3} (errors {})", fmt_errs(&e)))
}

fn c8(g: &[GoldenRecord]) -> Outcome {
    let slopes: Vec<f64> = (0..=2)
        .map(|s| loglog_slope(&OMEGAS, &omega_errors(g, -0.5, Kernel::Plain, s)))
        .collect();
    let ok = (1..=2).all(|s| slopes[s] <= slopes[s - 1] - C8_GAIN);
    let errs: Vec<String> = (0..=2).map(|s| fmt_errs(&omega_errors(g, -0.5, Kernel::Plain, s))).collect();
    (
        ok,
        format!(
            "slopes s=0,1,2: {:.3} {:.3} {:.3} (errors s=1: {}; s=2: {})",
            slopes[0], slopes[1], slopes[2], errs[1], errs[2]
        ),
    )
}

fn c9(g: &[GoldenRecord]) -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut tight = 0.0f64;
    for rec in g {
        let spec = rec.spec().unwrap();
        let f: TestFunction = rec.id.split('/').next().unwrap().parse().unwrap();
        let b = spec.b;
        for n in [4usize, 8, 16] {
            let xs = cc_points(n, b);
            let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x, b)).collect();
            let interp = cheb_fit(&ys, b).unwrap();
            let q = ccf_fn(&spec, |x| f.eval(x, b), n).unwrap();
            let sup = sup_error(|x| f.eval(x, b), &interp.coeffs, b, SUP_GRID);
            let bound = explicit_ccf_bound(&spec, sup);
            // rounding in the oracle value and in the moment dot product
            let p = spec.moment_params();
            let t = moment_table(&p, n, spec.kernel == Kernel::Log, None).unwrap();
            let mags: Vec<f64> = match spec.kernel {
                Kernel::Plain => t.m.iter().map(|v| v.abs()).collect(),
                Kernel::Log => {
                    let l = t.mlog.as_ref().unwrap();
                    t.m.iter().zip(l).map(|(u, v)| (b.ln() * u).abs() + v.abs()).collect()
                }
            };
            let dot: f64 = interp.coeffs.iter().zip(&mags).map(|(c, m)| c.abs() * m).sum();
            let noise = rec.err_est + C9_ROUNDING * b.powf(spec.alpha + 1.0) * dot.max(1.0);
            let err = (q.value - rec.value).abs();
            checks += 1;
            if err > bound + noise {
                bad.push(format!("{} N={n}: err {err:.2e} bound {bound:.2e} noise {noise:.2e}", rec.id));
            }
            if bound > 0.0 && err > noise {
                tight = tight.max(err / bound);
            }
        }
    }
    let detail = format!(
        "{checks} checks, {} violations, max err/bound {tight:.3}{}",
        bad.len(),
        bad.first().map(|s| format!("; first: {s}")).unwrap_or_default()
    );
    (bad.is_empty(), detail)
}

fn c10() -> Outcome {
    // f(t) = 1/(t+2) on [-1, 1], i.e. 1/(x+1) on [0, 2] with t = x - 1
    let rho = C10_RHO;
    let mb = 1.0 / (2.0 - 0.5 * (rho + 1.0 / rho));
    let info = AnalyticityInfo::new(rho, mb).unwrap();
    let df = |n: u32, t: f64| {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * fact / (t + 2.0).powi(n as i32 + 1)
    };
    let mut worst = 0.0f64;
    for n in [8usize, 16] {
        let xs = cc_points(n, 2.0);
        let ys: Vec<f64> = xs.iter().map(|&x| df(0, x - 1.0)).collect();
        let mut c = cheb_fit(&ys, 2.0).unwrap().coeffs;
        for d in 0..=2u32 {
            if d > 0 {
                c = cheb_derivative(&c, 2.0);
            }
            let sup = (0..SUP_GRID)
                .map(|i| {
                    let x = 2.0 * i as f64 / (SUP_GRID - 1) as f64;
                    (df(d, x - 1.0) - clenshaw(&c, 2.0, x)).abs()
                })
                .fold(0.0, f64::max);
            let bound = interp_error_bound(&info, n, d);
            worst = worst.max(sup / bound);
        }
    }
    (worst <= 1.0, format!("max measured/bound {worst:.3e} (rho {rho}, M {mb:.4})"))
}

fn c11() -> Outcome {
    let h = 1e-6;
    let mut worst = 0.0f64;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-3);
    for &(a, b, c, z) in &[(0.75, 1.75, 1.0, -25.0), (1.25, 2.25, 2.0, -400.0), (0.3, 1.3, 0.5, -2500.0)] {
        for (which, da, db, dc) in [(Param::A, h, 0.0, 0.0), (Param::B, 0.0, h, 0.0), (Param::C, 0.0, 0.0, h)] {
            let fd = (hyp1f2(a + da, b + db, c + dc, z).unwrap().value - hyp1f2(a - da, b - db, c - dc, z).unwrap().value)
                / (2.0 * h);
            let d = hyp1f2_dparam(a, b, c, z, which).unwrap().value;
            worst = worst.max(rel(d, fd));
        }
    }
    for &(mu, nu, z) in &[(0.5, 1.0, 100.0), (-0.5, 0.0, 30.0), (0.3, 1.7, 12.0), (1.5, 2.0, 60.0)] {
        let fd = (lommel_s(mu + h, nu, z).unwrap() - lommel_s(mu - h, nu, z).unwrap()) / (2.0 * h);
        worst = worst.max(rel(lommel_s_dmu(mu, nu, z).unwrap(), fd));
    }
    for &(r, m, a) in &[(5.0, 0.0, 0.0), (20.0, 1.0, -0.5), (80.0, 0.5, 0.25), (150.0, 2.0, 1.0)] {
        let g = |a: f64| base_moment_g(&MomentParams::new(r, m, a).unwrap()).unwrap();
        let fd = (g(a + h) - g(a - h)) / (2.0 * h);
        worst = worst.max(rel(base_moment_dg(&MomentParams::new(r, m, a).unwrap()).unwrap(), fd));
    }
    (worst <= C11_TOL, format!("max relative FD mismatch {worst:.2e}"))
}

fn c12() -> Outcome {
    let mut worst = 0.0f64;
    for r in [5.0, 50.0, 200.0] {
        let g1 = base_moment_g(&MomentParams::new(r, 1.0, 0.0).unwrap()).unwrap();
        let w1 = (1.0 - bessel_j(0.0, r).unwrap()) / r;
        let g2 = base_moment_g(&MomentParams::new(r, 0.0, 1.0).unwrap()).unwrap();
        let w2 = bessel_j(1.0, r).unwrap() / r;
        worst = worst.max((g1 - w1).abs()).max((g2 - w2).abs());
    }
    (worst <= C12_TOL, format!("max abs deviation {worst:.2e}"))
}

fn main() {
    let g = golden();
    let checks: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "moments vs oracle", Box::new(|| c1(&g))),
        (2, "recurrence residual on oracle moments", Box::new(|| c2(&g))),
        (3, "forward vs boundary value", Box::new(c3)),
        (4, "omega rate, plain", Box::new(|| c4(&g))),
        (5, "omega rate, log", Box::new(|| c5(&g))),
        (6, "N rate, alpha = 0", Box::new(|| n_rate(&g, 0.0, C6_TARGET))),
        (7, "N rate, alpha = -0.75", Box::new(|| n_rate(&g, -0.75, C7_TARGET))),
        (8, "HCCF order gain", Box::new(|| c8(&g))),
        (9, "explicit bound dominates", Box::new(|| c9(&g))),
        (10, "ellipse interpolation bound", Box::new(c10)),
        (11, "parameter derivatives vs finite differences", Box::new(c11)),
        (12, "closed-form base moments", Box::new(c12)),
    ];
    let mut unexpected = 0;
    for (n, name, f) in checks {
        let t = Instant::now();
        let (ok, detail) = f();
        let secs = t.elapsed().as_secs_f64();
        let known = KNOWN_UNATTAINABLE.contains(&n);
        let tag = match (ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {n:>2}: {tag} {name}: {detail} [{secs:.2}s]");
        if !ok && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
