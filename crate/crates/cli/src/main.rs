//! `ccf`: integrate, tabulate moments, run convergence sweeps, regenerate
//! the golden file.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use ccf_bessel::bounds::{error_report, interp_error_bound, sup_error, AnalyticityInfo, RateMode, SUP_GRID};
use ccf_bessel::chebyshev::{cc_points, cheb_fit};
use ccf_bessel::moments::{moment_table, MomentParams, Regime};
use ccf_bessel::oracle::{generate_golden, golden_cases, reference_integral, write_golden, OracleConfig};
use ccf_bessel::quadrature::ccf_fn;
use ccf_bessel::registry::TestFunction;
use ccf_bessel::{ccf_auto, hccf, Error, IntegralSpec, Kernel, QuadratureResult};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

/// Tolerance for `integrate` without --N, unless CCF_TOL is set.
const DEFAULT_AUTO_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "ccf", version, about = "Clenshaw-Curtis-Filon quadrature for x^a [ln x] f(x) J_m(wx) on [0, b]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate one registry function; prints value,N,s,regime,residual
    Integrate(IntegrateArgs),
    /// Error of CCF against the oracle over a grid of omega, N or s
    Sweep(SweepArgs),
    /// Table of modified moments
    Moments(MomentArgs),
    /// Regenerate the golden reference file
    Golden {
        #[arg(long)]
        out: String,
    },
    /// Explicit error bound and predicted rates
    Bounds(BoundsArgs),
}

#[derive(Args, Clone)]
struct Problem {
    #[arg(long = "f", default_value = "exp")]
    func: String,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    m: f64,
    #[arg(long, value_enum, default_value_t = KernelArg::Plain)]
    kernel: KernelArg,
}

#[derive(Copy, Clone, ValueEnum)]
enum KernelArg {
    Plain,
    Log,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Kernel {
        match k {
            KernelArg::Plain => Kernel::Plain,
            KernelArg::Log => Kernel::Log,
        }
    }
}

impl Problem {
    fn spec(&self, omega: f64) -> Result<IntegralSpec, Error> {
        IntegralSpec::new(self.b, self.alpha, self.m, omega, self.kernel.into())
    }

    fn function(&self) -> Result<TestFunction, Error> {
        self.func.parse()
    }
}

#[derive(Args)]
struct IntegrateArgs {
    #[command(flatten)]
    p: Problem,
    #[arg(long)]
    omega: f64,
    /// Number of Clenshaw-Curtis intervals; adaptive when omitted
    #[arg(long = "N")]
    n: Option<usize>,
    /// Endpoint derivative order for the Hermite variant
    #[arg(long)]
    s: Option<usize>,
    /// f, f', ..., f^(s) at 0 (defaults to the registry derivatives)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    deriv0: Option<Vec<f64>>,
    /// f, f', ..., f^(s) at b
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    derivb: Option<Vec<f64>>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepVar {
    Omega,
    #[value(name = "N")]
    N,
    #[value(name = "S")]
    S,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    var: SweepVar,
    /// Strictly increasing grid, comma separated, at least 3 values
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<f64>,
    #[command(flatten)]
    p: Problem,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long = "N")]
    n: Option<usize>,
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long)]
    r: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    m: f64,
    #[arg(long = "J")]
    j: usize,
    #[arg(long)]
    log: bool,
    #[arg(long)]
    force_bvp: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    FixedN,
    FixedOmega,
    Hccf,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    p: Problem,
    #[arg(long)]
    omega: f64,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::FixedN)]
    mode: ModeArg,
    /// k for fixed-omega, s for hccf
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Bernstein ellipse parameter for the interpolation bound
    #[arg(long)]
    rho: Option<f64>,
    /// sup |f| on that ellipse
    #[arg(long = "M")]
    m_bound: Option<f64>,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Numeric(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn g(x: f64) -> String {
    format!("{x:.16e}")
}

fn env_tol() -> Option<f64> {
    std::env::var("CCF_TOL").ok()?.parse().ok()
}

fn run_hccf(spec: &IntegralSpec, f: TestFunction, n: usize, s: usize, d0: Option<Vec<f64>>, db: Option<Vec<f64>>) -> Result<QuadratureResult, Error> {
    let b = spec.b;
    let xs = cc_points(n, b);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x, b)).collect();
    let d0 = d0.unwrap_or_else(|| f.derivs(s as u32, 0.0, b));
    let db = db.unwrap_or_else(|| f.derivs(s as u32, b, b));
    hccf(spec, &ys, &d0, &db, n, s)
}

fn integrate(a: IntegrateArgs) -> Out {
    let spec = a.p.spec(a.omega)?;
    let f = a.p.function()?;
    let b = spec.b;
    let r = match (a.n, a.s) {
        (Some(n), Some(s)) => run_hccf(&spec, f, n, s, a.deriv0, a.derivb)?,
        (Some(n), None) => ccf_fn(&spec, |x| f.eval(x, b), n)?,
        (None, None) => ccf_auto(&spec, |x| f.eval(x, b), env_tol().unwrap_or(DEFAULT_AUTO_TOL))?,
        (None, Some(_)) => return Err(Failure::Usage("--s needs --N".into())),
    };
    println!("{},{},{},{},{}", g(r.value), r.n_used, r.s_used, r.regime, g(r.residual));
    Ok(())
}

/// Least-squares slope of y against x.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn sweep(a: SweepArgs) -> Out {
    let grid = &a.grid;
    if grid.len() < 3 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Failure::Usage("grid must be strictly increasing with at least 3 values".into()));
    }
    let f = a.p.function()?;
    let b = a.p.b;
    let cfg = OracleConfig::from_env();
    let need = |o: Option<f64>, what: &str| o.ok_or_else(|| Failure::Usage(format!("--{what} is required for this sweep")));
    let rows: Vec<Result<(f64, f64, f64), Error>> = match a.var {
        SweepVar::Omega => {
            let n = a.n.ok_or_else(|| Failure::Usage("--N is required for this sweep".into()))?;
            grid.par_iter()
                .map(|&w| {
                    let spec = a.p.spec(w)?;
                    let q = ccf_fn(&spec, |x| f.eval(x, b), n)?;
                    let (o, _) = reference_integral(&spec, |x| f.eval(x, b), &cfg)?;
                    Ok((w, q.value, o))
                })
                .collect()
        }
        SweepVar::N | SweepVar::S => {
            let spec = a.p.spec(need(a.omega, "omega")?)?;
            let (o, _) = reference_integral(&spec, |x| f.eval(x, b), &cfg)?;
            let fixed_n = a.n;
            if a.var == SweepVar::S && fixed_n.is_none() {
                return Err(Failure::Usage("--N is required for this sweep".into()));
            }
            grid.par_iter()
                .map(|&v| {
                    let q = if a.var == SweepVar::N {
                        ccf_fn(&spec, |x| f.eval(x, b), v as usize)?
                    } else {
                        run_hccf(&spec, f, fixed_n.unwrap_or(8), v as usize, None, None)?
                    };
                    Ok((v, q.value, o))
                })
                .collect()
        }
    };
    let mut out = String::from("param,ccf,oracle,abs_err,slope\n");
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for row in rows {
        let (p, c, o) = row?;
        let e = (c - o).abs();
        // the s grid starts at 0, so its slope is taken against s itself
        xs.push(if a.var == SweepVar::S { p } else { p.ln() });
        ys.push(e.ln());
        let i = xs.len();
        let k = i.div_ceil(2).max(2).min(i);
        let sl = if i >= 2 { slope(&xs[i - k..], &ys[i - k..]) } else { f64::NAN };
        out.push_str(&format!("{},{},{},{},{}\n", g(p), g(c), g(o), g(e), g(sl)));
    }
    print!("{out}");
    Ok(())
}

fn moments(a: MomentArgs) -> Out {
    let p = MomentParams::new(a.r, a.m, a.alpha)?;
    let force = a.force_bvp.then_some(Regime::BoundaryValue);
    let t = moment_table(&p, a.j, a.log, force)?;
    let mut out = String::from(if a.log { "j,M,Mlog\n" } else { "j,M\n" });
    for j in 0..=a.j {
        match &t.mlog {
            Some(l) => out.push_str(&format!("{j},{},{}\n", g(t.m[j]), g(l[j]))),
            None => out.push_str(&format!("{j},{}\n", g(t.m[j]))),
        }
    }
    let k = t.k_used.map_or(String::new(), |k| format!(" K={k}"));
    out.push_str(&format!("# regime={} residual={}{k}\n", t.regime, g(t.residual)));
    print!("{out}");
    Ok(())
}

fn golden(out: &str) -> Out {
    let cases = golden_cases();
    let records = generate_golden(&cases, &OracleConfig::from_env())?;
    let mut w = BufWriter::new(File::create(out)?);
    write_golden(&records, &mut w)?;
    w.flush()?;
    eprintln!("wrote {} records to {out}", records.len());
    Ok(())
}

fn bounds(a: BoundsArgs) -> Out {
    let spec = a.p.spec(a.omega)?;
    let f = a.p.function()?;
    let b = spec.b;
    let mode = match a.mode {
        ModeArg::FixedN => RateMode::FixedN,
        ModeArg::FixedOmega => RateMode::FixedOmega(a.order),
        ModeArg::Hccf => RateMode::Hccf(a.order),
    };
    if a.n < 1 {
        return Err(Failure::Usage("--N must be >= 1".into()));
    }
    let xs = cc_points(a.n, b);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x, b)).collect();
    let interp = cheb_fit(&ys, b)?;
    let sup = sup_error(|x| f.eval(x, b), &interp.coeffs, b, SUP_GRID);
    let r = error_report(&spec, mode, Some(sup));
    let ellipse = match (a.rho, a.m_bound) {
        (Some(rho), Some(m)) => g(interp_error_bound(&AnalyticityInfo::new(rho, m)?, a.n, 0)),
        (None, None) => String::new(),
        _ => return Err(Failure::Usage("--rho and --M go together".into())),
    };
    let rate = |r: Option<ccf_bessel::bounds::Rate>| r.map_or(",".to_string(), |r| format!("{},{}", r.exponent, r.log_factor));
    let basis: Vec<String> = r.basis.iter().map(|b| b.to_string()).collect();
    println!("sup_err,explicit_bound,rate_omega,omega_log,rate_N,N_log,ellipse_bound,basis");
    println!(
        "{},{},{},{},{},{}",
        g(sup),
        r.explicit_bound.map_or(String::new(), g),
        rate(r.rate_omega),
        rate(r.rate_n),
        ellipse,
        basis.join(";")
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Integrate(a) => integrate(a),
        Cmd::Sweep(a) => sweep(a),
        Cmd::Moments(a) => moments(a),
        Cmd::Golden { out } => golden(&out),
        Cmd::Bounds(a) => bounds(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
