//! Ready-made experiment setups shared by the command line, the browser demo
//! and the tests.
//!
//! A single seed drives each setup; components use fixed offsets (instance
//! `seed`, start point `seed + 1`, curvature probe `seed + 2`).

use serde::{Deserialize, Serialize};

use crate::dataio::SparseDataset;
use crate::error::Result;
use crate::instances::{
    random_stiefel_point, stiefel_initial_curvature, synthetic_logistic_dataset, LogisticTrimmedL1, Provenance,
    RidgeConvention, StiefelBrockett,
};
use crate::numerics::DenseMatrix;
use crate::oracles::{RiemannianProblem, SmoothObjective};
use crate::solvers::{ac_pgm, ac_rgm, pgm_constant, rgm_armijo, ArmijoConfig, SolverConfig, StepConvention, Trace};

/// `L0 = theta L` multipliers used in the comparisons.
pub const THETAS: [f64; 4] = [0.05, 0.01, 0.005, 0.001];

#[derive(Clone, Debug)]
pub struct LabeledTrace {
    pub label: String,
    pub trace: Trace,
}

/// Brockett cost on `St(n, r)` with its random start and curvature estimate `L~`.
#[derive(Clone, Debug)]
pub struct StiefelSetup {
    pub problem: StiefelBrockett,
    pub x0: DenseMatrix,
    pub l_tilde: f64,
    pub provenance: Provenance,
}

impl StiefelSetup {
    pub fn new(n: usize, r: usize, seed: u64) -> Result<Self> {
        let problem = StiefelBrockett::synthetic(n, r, seed)?;
        let x0 = random_stiefel_point(n, r, seed.wrapping_add(1))?;
        let l_tilde = stiefel_initial_curvature(&problem, &x0, seed.wrapping_add(2))?;
        let mut provenance = Provenance::new("stiefel-brockett", Some(seed), vec![n, r]).with_param("l_tilde", l_tilde);
        if let Some(b) = problem.lower_bound_hint() {
            provenance = provenance.with_param("lower_bound", b);
        }
        Ok(Self { problem, x0, l_tilde, provenance })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaceSettings {
    pub alpha: f64,
    pub thetas: Vec<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub sigma: f64,
    pub t: f64,
    /// First trial step is `convention.initial_step(L~, s_factor)`.
    pub s_factor: f64,
    pub convention: StepConvention,
}

impl Default for RaceSettings {
    fn default() -> Self {
        Self {
            alpha: 0.6,
            thetas: THETAS.to_vec(),
            tol: 1e-4,
            max_iter: 1_000_000,
            sigma: 1e-4,
            t: 0.5,
            s_factor: 1e-3,
            convention: StepConvention::Inverse,
        }
    }
}

/// Armijo, reduced Armijo, then AC-RGM for each `theta`, all from the same start.
pub fn stiefel_race(setup: &StiefelSetup, settings: &RaceSettings) -> Result<Vec<LabeledTrace>> {
    let s = settings.convention.initial_step(setup.l_tilde, settings.s_factor);
    let armijo = SolverConfig::armijo(ArmijoConfig { sigma: settings.sigma, t: settings.t, s })
        .max_iter(settings.max_iter)
        .tol(settings.tol);
    let mut out = Vec::new();
    for (label, reduced) in [("armijo", false), ("reduced-armijo", true)] {
        let trace = rgm_armijo(&setup.problem, &setup.x0, &armijo, reduced)?.with_provenance(setup.provenance.clone());
        out.push(LabeledTrace { label: label.to_string(), trace });
    }
    for &theta in &settings.thetas {
        let cfg =
            SolverConfig::new(settings.alpha, theta * setup.l_tilde).max_iter(settings.max_iter).tol(settings.tol);
        let trace = ac_rgm(&setup.problem, &setup.x0, &cfg)?
            .with_provenance(setup.provenance.clone().with_param("theta", theta));
        out.push(LabeledTrace { label: format!("ac-rgm-theta-{theta}"), trace });
    }
    Ok(out)
}

/// Logistic regression with trimmed-l1 penalty and its provenance.
#[derive(Clone, Debug)]
pub struct LogisticSetup {
    pub problem: LogisticTrimmedL1,
    pub provenance: Provenance,
}

impl LogisticSetup {
    /// Default weights `lambda1 = 1e-2 / m`, `lambda2 = 10 / m`, `kappa = min(10, n)`.
    pub fn from_dataset(data: SparseDataset, ridge: RidgeConvention, seed: Option<u64>) -> Result<Self> {
        let (m, n) = (data.n_samples(), data.n_features());
        let source = data.source.clone();
        let problem = LogisticTrimmedL1::with_convention(data, 1e-2 / m as f64, 10.0 / m as f64, 10.min(n), ridge)?;
        let mut provenance = Provenance::new("logreg-trimmed", seed, vec![m, n])
            .with_param("lambda1", problem.lambda1())
            .with_param("lambda2", problem.lambda2())
            .with_param("kappa", problem.kappa() as f64)
            .with_param("L", problem.smoothness());
        if let Some(b) = problem.lower_bound_hint() {
            provenance = provenance.with_param("lower_bound", b);
        }
        if let Some(src) = source {
            provenance = provenance.with_source(src);
        }
        Ok(Self { problem, provenance })
    }

    pub fn synthetic(m: usize, n: usize, seed: u64) -> Result<Self> {
        Self::from_dataset(synthetic_logistic_dataset(m, n, seed)?, RidgeConvention::Lambda1, Some(seed))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSettings {
    pub alpha: f64,
    pub thetas: Vec<f64>,
    /// The constant-step baseline uses `gamma = constant_factor * L`.
    pub constant_factor: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ComparisonSettings {
    fn default() -> Self {
        Self { alpha: 1.1, thetas: THETAS.to_vec(), constant_factor: 1.1, tol: 1e-6, max_iter: 20_000 }
    }
}

/// Constant-step baseline followed by AC-PGM for each `theta`, from the origin.
pub fn logistic_comparison(setup: &LogisticSetup, settings: &ComparisonSettings) -> Result<Vec<LabeledTrace>> {
    let p = &setup.problem;
    let l = p.smoothness();
    let x0 = vec![0.0; p.data().n_features()];
    let mut out = Vec::new();
    let gamma = settings.constant_factor * l;
    let trace = pgm_constant(p, &x0, gamma, settings.max_iter, settings.tol)?.with_provenance(setup.provenance.clone());
    out.push(LabeledTrace { label: format!("pgm-constant-{}L", settings.constant_factor), trace });
    for &theta in &settings.thetas {
        let cfg = SolverConfig::new(settings.alpha, theta * l).max_iter(settings.max_iter).tol(settings.tol);
        let trace = ac_pgm(p, &x0, &cfg)?.with_provenance(setup.provenance.clone().with_param("theta", theta));
        out.push(LabeledTrace { label: format!("ac-pgm-theta-{theta}"), trace });
    }
    Ok(out)
}

/// One row of a run comparison: wall time, iterations, retractions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub label: String,
    pub time_s: f64,
    pub iterations: usize,
    pub retractions: Option<u64>,
    pub min_residual: f64,
    pub final_objective: f64,
    pub failures: usize,
}

pub fn summary_rows(runs: &[LabeledTrace]) -> Vec<SummaryRow> {
    runs.iter()
        .map(|r| {
            let s = r.trace.summary();
            SummaryRow {
                label: r.label.clone(),
                time_s: s.wall_ns as f64 * 1e-9,
                iterations: s.iterations,
                retractions: s.total_retractions,
                min_residual: s.min_residual,
                final_objective: s.final_objective,
                failures: s.failures,
            }
        })
        .collect()
}

/// Plain-text table with `Time (s)`, `#Iter.` and `#Retr.` columns.
pub fn format_summary(rows: &[SummaryRow]) -> String {
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(9).max(9);
    let mut out =
        format!("{:<width$}  {:>10}  {:>9}  {:>9}  {:>12}\n", "Algorithm", "Time (s)", "#Iter.", "#Retr.", "min resid");
    for r in rows {
        let retr = r.retractions.map_or_else(|| "-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{:<width$}  {:>10.4}  {:>9}  {:>9}  {:>12.3e}\n",
            r.label, r.time_s, r.iterations, retr, r.min_residual
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setups_are_deterministic() {
        let a = StiefelSetup::new(6, 2, 3).unwrap();
        let b = StiefelSetup::new(6, 2, 3).unwrap();
        assert_eq!(a.l_tilde.to_bits(), b.l_tilde.to_bits());
        assert_eq!(a.x0, b.x0);
    }

    #[test]
    fn small_race_has_expected_rows() {
        let setup = StiefelSetup::new(8, 2, 1).unwrap();
        let settings = RaceSettings { thetas: vec![0.01], max_iter: 100_000, ..RaceSettings::default() };
        let runs = stiefel_race(&setup, &settings).unwrap();
        let labels: Vec<&str> = runs.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["armijo", "reduced-armijo", "ac-rgm-theta-0.01"]);
        let rows = summary_rows(&runs);
        assert_eq!(rows[2].retractions, Some(rows[2].iterations as u64));
        assert!(format_summary(&rows).contains("#Retr."));
    }
}
