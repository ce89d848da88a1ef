//! Browser demo: three experiments exposed to JavaScript as JSON.
//!
//! The `*_json` functions are the `wasm-bindgen` surface; the plain functions
//! behind them are ordinary Rust and are tested natively.

use autocond::diagnostics::{min_so_far, rate_fit};
use autocond::experiments::{
    logistic_comparison, stiefel_race, summary_rows, ComparisonSettings, LabeledTrace, LogisticSetup, RaceSettings,
    StiefelSetup, THETAS,
};
use autocond::instances::synth::{gaussian_vec, rng};
use autocond::instances::HolderToy;
use autocond::solvers::{ac_pgm, SolverConfig, StepConvention};
use autocond::{Error, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

pub const MAX_SAMPLES: usize = 2000;
pub const MAX_FEATURES: usize = 200;
pub const MAX_STIEFEL_N: usize = 60;
pub const MAX_HOLDER_ITER: usize = 20_000;

#[derive(Clone, Debug, Serialize)]
pub struct Series {
    pub label: String,
    pub residual: Vec<f64>,
    pub gamma: Vec<f64>,
    pub iterations: usize,
    pub retractions: Option<u64>,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub title: String,
    pub runs: Vec<Series>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolderRate {
    pub nu: f64,
    pub residual: Vec<f64>,
    pub min_residual: Vec<f64>,
    pub slope: Option<f64>,
    pub worst_case_slope: f64,
    pub termination: String,
}

fn series(runs: Vec<LabeledTrace>) -> Vec<Series> {
    let rows = summary_rows(&runs);
    runs.into_iter()
        .zip(rows)
        .map(|(run, row)| Series {
            residual: run.trace.residuals(),
            gamma: run.trace.gammas(),
            label: run.label,
            iterations: row.iterations,
            retractions: row.retractions,
            failures: row.failures,
        })
        .collect()
}

fn within(name: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidArgument(format!("{name} must lie in [{lo}, {hi}], got {value}")));
    }
    Ok(())
}

/// Constant step `1.1 L` against AC-PGM for each theta on synthetic logistic data.
pub fn logistic_demo(m: usize, n: usize, seed: u64) -> Result<Comparison> {
    within("m", m, 2, MAX_SAMPLES)?;
    within("n", n, 1, MAX_FEATURES)?;
    let setup = LogisticSetup::synthetic(m, n, seed)?;
    let runs = logistic_comparison(&setup, &ComparisonSettings::default())?;
    Ok(Comparison { title: format!("logistic + trimmed l1, m = {m}, n = {n}, seed {seed}"), runs: series(runs) })
}

/// Armijo, reduced Armijo and AC-RGM on the Brockett cost over `St(n, r)`.
pub fn stiefel_demo(n: usize, r: usize, seed: u64, literal_step: bool) -> Result<Comparison> {
    within("n", n, 2, MAX_STIEFEL_N)?;
    within("r", r, 1, n)?;
    let setup = StiefelSetup::new(n, r, seed)?;
    let convention = if literal_step { StepConvention::Literal } else { StepConvention::Inverse };
    let settings = RaceSettings { thetas: THETAS.to_vec(), max_iter: 200_000, convention, ..RaceSettings::default() };
    let runs = stiefel_race(&setup, &settings)?;
    Ok(Comparison { title: format!("Brockett on St({n}, {r}), seed {seed}"), runs: series(runs) })
}

/// AC-PGM on `||x||^{1+nu} / (1+nu)` with a log-log fit of the tail.
pub fn holder_demo(nu: f64, n: usize, seed: u64, max_iter: usize) -> Result<HolderRate> {
    within("n", n, 1, 500)?;
    within("iterations", max_iter, 1, MAX_HOLDER_ITER)?;
    let problem = HolderToy::new(nu, n, false)?;
    let x0 = gaussian_vec(&mut rng(seed), n);
    let trace = ac_pgm(&problem, &x0, &SolverConfig::new(1.1, 0.01).max_iter(max_iter).tol(0.0))?;
    let residual = trace.residuals();
    Ok(HolderRate {
        nu,
        min_residual: min_so_far(&residual),
        slope: rate_fit(&trace, 0.5).ok().map(|f| f.slope),
        worst_case_slope: -nu / (1.0 + nu),
        termination: format!("{:?}", trace.termination),
        residual,
    })
}

fn to_json<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn logistic_json(m: usize, n: usize, seed: u32) -> std::result::Result<String, JsError> {
    to_json(logistic_demo(m, n, u64::from(seed)))
}

#[wasm_bindgen]
pub fn stiefel_json(n: usize, r: usize, seed: u32, literal_step: bool) -> std::result::Result<String, JsError> {
    to_json(stiefel_demo(n, r, u64::from(seed), literal_step))
}

#[wasm_bindgen]
pub fn holder_json(nu: f64, n: usize, seed: u32, max_iter: usize) -> std::result::Result<String, JsError> {
    to_json(holder_demo(nu, n, u64::from(seed), max_iter))
}
