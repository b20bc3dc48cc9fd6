//! The frozen table of reference values.
//!
//! One record per line: `case_id,b,alpha,m,omega,kernel,value,err_est`.
//! Ids read `function/kernel/a=α/m=m/w=ω/b=b`.

use std::io::Write;

use rayon::prelude::*;

use super::{reference_integral, OracleConfig};
use crate::error::{Error, Result};
use crate::quadrature::{IntegralSpec, Kernel};
use crate::registry::TestFunction;

/// Moment grid: f = T*_j, b = 1, ω = r.
pub const MOMENT_R: [f64; 3] = [5.0, 20.0, 100.0];
pub const MOMENT_M: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const MOMENT_ALPHA: [f64; 5] = [-0.5, -0.25, 0.0, 0.5, 1.0];
pub const MOMENT_J: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCase {
    pub id: String,
    pub spec: IntegralSpec,
    pub func: TestFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub id: String,
    pub b: f64,
    pub alpha: f64,
    pub m: f64,
    pub omega: f64,
    pub kernel: Kernel,
    pub value: f64,
    pub err_est: f64,
}

impl GoldenRecord {
    pub fn spec(&self) -> Result<IntegralSpec> {
        IntegralSpec::new(self.b, self.alpha, self.m, self.omega, self.kernel)
    }
}

pub fn case_id(func: TestFunction, spec: &IntegralSpec) -> String {
    format!(
        "{}/{}/a={}/m={}/w={}/b={}",
        func, spec.kernel, spec.alpha, spec.m, spec.omega, spec.b
    )
}

fn case(func: TestFunction, b: f64, alpha: f64, m: f64, omega: f64, kernel: Kernel) -> GoldenCase {
    let spec = IntegralSpec::new(b, alpha, m, omega, kernel).expect("valid golden spec");
    GoldenCase {
        id: case_id(func, &spec),
        spec,
        func,
    }
}

/// Every golden case, in file order.
pub fn golden_cases() -> Vec<GoldenCase> {
    use Kernel::{Log, Plain};
    use TestFunction::*;
    let mut v = Vec::new();
    for kernel in [Plain, Log] {
        for r in MOMENT_R {
            for m in MOMENT_M {
                for a in MOMENT_ALPHA {
                    for j in 0..=MOMENT_J {
                        v.push(case(Cheb(j), 1.0, a, m, r, kernel));
                    }
                }
            }
        }
    }
    for j in 0..=40 {
        v.push(case(Cheb(j), 1.0, -0.5, 0.0, 10.0, Plain));
    }
    for w in [20.0, 50.0, 100.0, 200.0, 400.0, 800.0] {
        v.push(case(Exp, 1.0, -0.5, 0.0, w, Plain));
    }
    for w in [50.0, 100.0, 200.0, 400.0, 800.0] {
        v.push(case(Exp, 1.0, 0.0, 0.0, w, Log));
    }
    v.push(case(Exp, 1.0, 0.0, 1.0, 50.0, Log));
    v.push(case(One, 1.0, -0.5, 0.0, 30.0, Plain));
    for k in 0..=4 {
        v.push(case(Monomial(k), 1.0, -0.5, 0.0, 30.0, Plain));
    }
    v.push(case(Monomial(4), 1.0, 0.0, 0.0, 40.0, Plain));
    v.push(case(Reciprocal, 1.0, -0.5, 0.0, 200.0, Plain));
    v.push(case(Cos5, 2.0, 0.5, 2.0, 80.0, Log));
    v.push(case(Runge, 1.0, -0.5, 0.0, 50.0, Plain));
    for a in [0.0, -0.75] {
        v.push(case(AbsPower(3.0), 1.0, a, 0.0, 10.0, Plain));
    }
    v
}

/// Runs the oracle on every case; parallel, results in case order.
pub fn generate_golden(cases: &[GoldenCase], cfg: &OracleConfig) -> Result<Vec<GoldenRecord>> {
    cases
        .par_iter()
        .map(|c| {
            let b = c.spec.b;
            let (value, err_est) = reference_integral(&c.spec, |x| c.func.eval(x, b), cfg)?;
            Ok(GoldenRecord {
                id: c.id.clone(),
                b,
                alpha: c.spec.alpha,
                m: c.spec.m,
                omega: c.spec.omega,
                kernel: c.spec.kernel,
                value,
                err_est,
            })
        })
        .collect()
}

pub fn format_record(r: &GoldenRecord) -> String {
    format!(
        "{},{},{},{},{},{},{:.16e},{:.16e}",
        r.id, r.b, r.alpha, r.m, r.omega, r.kernel, r.value, r.err_est
    )
}

pub fn write_golden(records: &[GoldenRecord], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "# case_id,b,alpha,m,omega,kernel,value,err_est")?;
    for r in records {
        writeln!(w, "{}", format_record(r))?;
    }
    Ok(())
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parameter(format!("golden line {}: malformed record", n + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(bad());
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        out.push(GoldenRecord {
            id: f[0].to_string(),
            b: num(f[1])?,
            alpha: num(f[2])?,
            m: num(f[3])?,
            omega: num(f[4])?,
            kernel: f[5].parse()?,
            value: num(f[6])?,
            err_est: num(f[7])?,
        });
    }
    Ok(out)
}

pub fn find_record<'a>(records: &'a [GoldenRecord], id: &str) -> Option<&'a GoldenRecord> {
    records.iter().find(|r| r.id == id)
}
