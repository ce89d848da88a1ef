//! Post-hoc checks of traces against the per-iteration inequalities and rate
//! bounds that auto-conditioned methods satisfy, plus rate fitting.
//!
//! Everything here is a pure function of a [`Trace`](crate::solvers::Trace)
//! and a few problem constants.

mod bounds;
mod rates;

use serde::{Deserialize, Serialize};

pub use bounds::{
    bpgm_descent_check, conservative_lower_bound, failure_census, gamma_ceiling_check, gamma_monotone, lemma1_check,
    success_descent_check, theorem1_bound_check, theorem4_bound_check, theorem5_bound_check, theorem6_bound_check,
    FailureCensus, INEQUALITY_RTOL,
};
pub use rates::{loglog_fit, min_so_far, rate_fit, semilog_fit, RateFit, MIN_FIT_LENGTH};

/// One `lhs <= rhs + allowance` comparison at iteration `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub allowance: f64,
}

impl BoundPoint {
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs - self.allowance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub points: Vec<BoundPoint>,
    /// Largest `lhs - rhs - allowance`; the check passes iff this is `<= 0`.
    pub max_violation: f64,
    pub pass: bool,
}

impl BoundReport {
    pub fn new(name: &str, points: Vec<BoundPoint>) -> Self {
        let max_violation = points.iter().map(BoundPoint::excess).fold(f64::NEG_INFINITY, f64::max);
        let pass = points.iter().all(|p| p.excess() <= 0.0);
        Self { name: name.to_string(), points, max_violation, pass }
    }

    /// First iteration at which the inequality fails.
    pub fn first_violation(&self) -> Option<usize> {
        self.points.iter().find(|p| !(p.excess() <= 0.0)).map(|p| p.k)
    }
}
