//! The iterative methods. Each run is a sequential loop that appends one
//! [`IterationRecord`] per iteration to a [`Trace`].
//!
//! Auto-conditioned methods use `gamma_k = max{L0, L_1, ..., L_{k-1}}`, where
//! `L_l` is the curvature measured between consecutive iterates. Iteration `k`
//! is a success when `beta gamma_k >= L_k`.

mod ac_bpgm;
mod ac_cgm;
mod ac_pgm;
mod ac_rgm;
mod rgm_armijo;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::Provenance;

pub use ac_bpgm::ac_bpgm;
pub use ac_cgm::ac_cgm;
pub use ac_pgm::{ac_pgm, pgm_constant};
pub use ac_rgm::ac_rgm;
pub use rgm_armijo::rgm_armijo;

/// Squared step lengths below this are treated as `x^k = x^{k-1}`.
pub const STEP_UNDERFLOW: f64 = 1e-300;

/// Backtracking gives up once `m` would exceed this.
pub const ARMIJO_MAX_TRIALS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    AcPgm,
    PgmConstant,
    AcBpgm,
    AcCgm,
    AcRgm,
    Armijo,
    ReducedArmijo,
}

impl SolverKind {
    pub const ALL: [SolverKind; 7] = [
        SolverKind::AcPgm,
        SolverKind::PgmConstant,
        SolverKind::AcBpgm,
        SolverKind::AcCgm,
        SolverKind::AcRgm,
        SolverKind::Armijo,
        SolverKind::ReducedArmijo,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SolverKind::AcPgm => "ac-pgm",
            SolverKind::PgmConstant => "pgm-constant",
            SolverKind::AcBpgm => "ac-bpgm",
            SolverKind::AcCgm => "ac-cgm",
            SolverKind::AcRgm => "ac-rgm",
            SolverKind::Armijo => "armijo",
            SolverKind::ReducedArmijo => "reduced-armijo",
        }
    }

    /// Whether the stepsize is the running maximum of curvature estimates.
    pub fn is_auto_conditioned(self) -> bool {
        matches!(self, SolverKind::AcPgm | SolverKind::AcBpgm | SolverKind::AcCgm | SolverKind::AcRgm)
    }

    /// Methods whose last record may be a pure stopping test (no step taken).
    fn has_check_only_records(self) -> bool {
        matches!(self, SolverKind::AcCgm | SolverKind::AcRgm | SolverKind::Armijo | SolverKind::ReducedArmijo)
    }

    /// Lower bound on `alpha` (exclusive), if the method uses it.
    pub fn alpha_lower_bound(self) -> Option<f64> {
        match self {
            SolverKind::AcPgm | SolverKind::AcBpgm => Some(1.0),
            SolverKind::AcCgm | SolverKind::AcRgm => Some(0.5),
            _ => None,
        }
    }

    /// Success threshold: `(alpha + 1) / 2` for the proximal methods,
    /// `alpha + 1/2` for conditional and Riemannian gradient.
    pub fn beta(self, alpha: f64) -> Option<f64> {
        match self {
            SolverKind::AcPgm | SolverKind::AcBpgm => Some((alpha + 1.0) / 2.0),
            SolverKind::AcCgm | SolverKind::AcRgm => Some(alpha + 0.5),
            SolverKind::PgmConstant => Some(1.0),
            SolverKind::Armijo | SolverKind::ReducedArmijo => None,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown solver `{s}`")))
    }
}

/// Backtracking parameters: trial steps `s t^m`, sufficient decrease `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArmijoConfig {
    pub sigma: f64,
    pub t: f64,
    pub s: f64,
}

impl ArmijoConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        if !unit(self.sigma) || !unit(self.t) {
            return Err(Error::Config(format!("Armijo needs sigma, t in (0, 1), got {} and {}", self.sigma, self.t)));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::Config(format!("Armijo needs s > 0, got {}", self.s)));
        }
        Ok(())
    }
}

/// How a curvature scale `l` and factor `c` define the first Armijo trial step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepConvention {
    /// `s = 1 / (c l)`: `c l` is an inverse stepsize, like `L0 = theta l`.
    #[default]
    Inverse,
    /// `s = c l`.
    Literal,
}

impl StepConvention {
    pub fn initial_step(self, l: f64, factor: f64) -> f64 {
        match self {
            StepConvention::Inverse => 1.0 / (factor * l),
            StepConvention::Literal => factor * l,
        }
    }
}

impl FromStr for StepConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse" => Ok(StepConvention::Inverse),
            "literal" => Ok(StepConvention::Literal),
            _ => Err(Error::InvalidArgument(format!("unknown step convention `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub alpha: f64,
    pub l0: f64,
    pub max_iter: usize,
    pub residual_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub armijo: Option<ArmijoConfig>,
    /// Keep every iterate in [`Trace::iterates`] (memory grows with `max_iter`).
    #[serde(default)]
    pub record_iterates: bool,
}

impl SolverConfig {
    pub fn new(alpha: f64, l0: f64) -> Self {
        Self { alpha, l0, max_iter: 10_000, residual_tol: 1e-6, armijo: None, record_iterates: false }
    }

    /// Configuration for the backtracking baselines; `l0` records `1 / s`.
    pub fn armijo(armijo: ArmijoConfig) -> Self {
        Self {
            alpha: 1.0,
            l0: 1.0 / armijo.s,
            max_iter: 10_000,
            residual_tol: 1e-4,
            armijo: Some(armijo),
            record_iterates: false,
        }
    }

    pub fn max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn tol(mut self, residual_tol: f64) -> Self {
        self.residual_tol = residual_tol;
        self
    }

    pub fn record_iterates(mut self, on: bool) -> Self {
        self.record_iterates = on;
        self
    }

    pub fn validate(&self, kind: SolverKind) -> Result<()> {
        if !(self.l0 > 0.0 && self.l0.is_finite()) {
            return Err(Error::Config(format!("L0 must be positive and finite, got {}", self.l0)));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        if !(self.residual_tol >= 0.0) {
            return Err(Error::Config(format!("residual tolerance must be >= 0, got {}", self.residual_tol)));
        }
        if let Some(lb) = kind.alpha_lower_bound() {
            if !(self.alpha > lb && self.alpha.is_finite()) {
                return Err(Error::Config(format!("{kind} requires alpha > {lb}, got {}", self.alpha)));
            }
        }
        if matches!(kind, SolverKind::Armijo | SolverKind::ReducedArmijo) {
            self.armijo.ok_or_else(|| Error::Config(format!("{kind} needs Armijo parameters")))?.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    pub gamma: f64,
    /// Absent when the run stopped before the estimate was formed.
    pub l_k: Option<f64>,
    pub success: Option<bool>,
    pub residual: f64,
    pub objective: f64,
    pub step_norm: f64,
    pub tau: Option<f64>,
    pub retr_cum: Option<u64>,
    pub wall_ns: u64,
    /// `D_h(x^k, x^{k-1})` for Bregman runs; kept in memory only.
    #[serde(skip)]
    pub divergence: Option<f64>,
}

impl IterationRecord {
    pub fn new(k: usize, gamma: f64, residual: f64, objective: f64, step_norm: f64) -> Self {
        Self {
            k,
            gamma,
            l_k: None,
            success: None,
            residual,
            objective,
            step_norm,
            tau: None,
            retr_cum: None,
            wall_ns: 0,
            divergence: None,
        }
    }

    /// Sets `L_k` and classifies the iteration against `beta gamma_k`.
    fn with_estimate(mut self, l_k: f64, beta: Option<f64>) -> Self {
        self.l_k = Some(l_k);
        self.success = beta.map(|b| b * self.gamma >= l_k);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// The residual fell to the tolerance.
    Converged,
    /// The step vanished (`x^k = x^{k-1}` or `v^k = x^{k-1}`).
    Stalled,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub solver: SolverKind,
    pub config: SolverConfig,
    pub beta: Option<f64>,
    pub initial_objective: f64,
    pub provenance: Provenance,
    pub version: String,
}

/// Quantities derived from the records alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    /// Iterations that took a step; a final pure stopping test is not counted.
    pub iterations: usize,
    pub failures: usize,
    pub min_residual: f64,
    pub final_objective: f64,
    pub total_retractions: Option<u64>,
    pub wall_ns: u64,
}

pub fn recompute_summary(solver: SolverKind, records: &[IterationRecord]) -> TraceSummary {
    let iterations = if solver.has_check_only_records() {
        records.iter().filter(|r| r.tau.is_some()).count()
    } else {
        records.len()
    };
    TraceSummary {
        iterations,
        failures: records.iter().filter(|r| r.success == Some(false)).count(),
        min_residual: records.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min),
        final_objective: records.last().map_or(f64::NAN, |r| r.objective),
        total_retractions: records.last().and_then(|r| r.retr_cum),
        wall_ns: records.last().map_or(0, |r| r.wall_ns),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub header: TraceHeader,
    pub records: Vec<IterationRecord>,
    pub termination: Termination,
    /// `x^0, x^1, ...` (flattened row-major for matrices) when requested.
    #[serde(skip)]
    pub iterates: Vec<Vec<f64>>,
}

impl Trace {
    pub fn summary(&self) -> TraceSummary {
        recompute_summary(self.header.solver, &self.records)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.header.provenance = provenance;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.header.config.alpha
    }

    pub fn l0(&self) -> f64 {
        self.header.config.l0
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.gamma).collect()
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.residual).collect()
    }

    /// Iterations needed to bring the residual to `tol`, if reached.
    pub fn iterations_to(&self, tol: f64) -> Option<usize> {
        self.records.iter().find(|r| r.residual <= tol).map(|r| r.k)
    }
}

/// Monotone nanosecond clock; reads zero where `std::time` is unavailable.
struct Clock {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Clock {
    fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ns(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_nanos() as u64
        }
        #[cfg(target_arch = "wasm32")]
        {
            0
        }
    }
}

/// Accumulates records and timing for one run.
struct Recorder {
    clock: Clock,
    header: TraceHeader,
    records: Vec<IterationRecord>,
    iterates: Vec<Vec<f64>>,
}

impl Recorder {
    fn new(kind: SolverKind, cfg: &SolverConfig, initial_objective: f64, x0: &[f64]) -> Self {
        let header = TraceHeader {
            solver: kind,
            config: cfg.clone(),
            beta: kind.beta(cfg.alpha),
            initial_objective,
            provenance: Provenance::default(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        let iterates = if cfg.record_iterates { vec![x0.to_vec()] } else { Vec::new() };
        Self { clock: Clock::start(), header, records: Vec::new(), iterates }
    }

    fn beta(&self) -> Option<f64> {
        self.header.beta
    }

    fn push(&mut self, mut record: IterationRecord) {
        record.wall_ns = self.clock.elapsed_ns();
        self.records.push(record);
    }

    fn iterate(&mut self, x: &[f64]) {
        if self.header.config.record_iterates {
            self.iterates.push(x.to_vec());
        }
    }

    fn finish(self, termination: Termination) -> Trace {
        Trace { header: self.header, records: self.records, termination, iterates: self.iterates }
    }
}

fn ensure_finite(k: usize, values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_bounds_are_enforced() {
        assert!(SolverConfig::new(1.0, 1.0).validate(SolverKind::AcPgm).is_err());
        assert!(SolverConfig::new(1.1, 1.0).validate(SolverKind::AcPgm).is_ok());
        assert!(SolverConfig::new(0.6, 1.0).validate(SolverKind::AcBpgm).is_err());
        assert!(SolverConfig::new(0.6, 1.0).validate(SolverKind::AcCgm).is_ok());
        assert!(SolverConfig::new(0.5, 1.0).validate(SolverKind::AcRgm).is_err());
        assert!(SolverConfig::new(1.1, 0.0).validate(SolverKind::AcPgm).is_err());
        assert!(SolverConfig::new(1.1, 1.0).validate(SolverKind::Armijo).is_err());
        let bad = ArmijoConfig { sigma: 1e-4, t: 1.0, s: 1.0 };
        assert!(SolverConfig::armijo(bad).validate(SolverKind::Armijo).is_err());
    }

    #[test]
    fn beta_per_family() {
        assert_eq!(SolverKind::AcPgm.beta(1.1), Some(1.05));
        assert_eq!(SolverKind::AcRgm.beta(0.6), Some(1.1));
        assert_eq!(SolverKind::Armijo.beta(0.6), None);
    }

    #[test]
    fn ids_round_trip() {
        for k in SolverKind::ALL {
            assert_eq!(k.id().parse::<SolverKind>().unwrap(), k);
        }
        assert!("newton".parse::<SolverKind>().is_err());
    }
}
