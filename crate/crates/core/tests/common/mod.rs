#![allow(dead_code)]

use ccf_bessel::oracle::{golden::case_id, parse_golden, GoldenRecord};
use ccf_bessel::registry::TestFunction;
use ccf_bessel::IntegralSpec;

pub const GOLDEN: &str = include_str!("../data/golden.csv");

pub fn golden() -> Vec<GoldenRecord> {
    parse_golden(GOLDEN).expect("golden file parses")
}

/// Golden value for `func` on `spec`; panics when the case is missing.
pub fn golden_value(records: &[GoldenRecord], func: TestFunction, spec: &IntegralSpec) -> f64 {
    let id = case_id(func, spec);
    records
        .iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("no golden record {id}"))
        .value
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
