use serde::{Deserialize, Serialize};

use super::{BoundPoint, BoundReport};
use crate::error::{Error, Result};
use crate::solvers::{IterationRecord, Trace};

/// Relative slack `1e-8 (1 + |rhs|)` for accumulated rounding.
pub const INEQUALITY_RTOL: f64 = 1e-8;

fn allowance(rhs: f64) -> f64 {
    INEQUALITY_RTOL * (1.0 + rhs.abs())
}

fn beta_of(trace: &Trace) -> Result<f64> {
    trace
        .header
        .beta
        .ok_or_else(|| Error::InvalidArgument(format!("{} traces have no success threshold", trace.header.solver)))
}

/// `gamma_{k+1} = max{gamma_k, L_k}`.
fn next_gamma(r: &IterationRecord) -> f64 {
    r.l_k.map_or(r.gamma, |l| r.gamma.max(l))
}

/// Records carrying a curvature estimate. Only the final record may lack one.
fn estimated(trace: &Trace) -> Result<&[IterationRecord]> {
    let n = trace.records.len();
    let end = match trace.records.last() {
        Some(r) if r.l_k.is_none() => n - 1,
        _ => n,
    };
    let head = &trace.records[..end];
    if let Some(r) = head.iter().find(|r| r.l_k.is_none() || r.success.is_none()) {
        return Err(Error::MissingField { field: "L_k", k: r.k });
    }
    Ok(head)
}

/// Best available value for `F*`: the certified lower bound when known,
/// never above the best objective actually observed.
pub fn conservative_lower_bound(hint: Option<f64>, observed: impl IntoIterator<Item = f64>) -> f64 {
    let best = observed.into_iter().fold(f64::INFINITY, f64::min);
    hint.map_or(best, |h| h.min(best))
}

/// Per-iteration bound for proximal gradient:
/// `((alpha - 1) / (4 alpha^2)) sum_l r_l^2 / gamma_l <= F(x^0) - F(x^k) + sum_{l failed} ((gamma_{l+1} - gamma_l) / 2) ||x^l - x^{l-1}||^2`.
pub fn lemma1_check(trace: &Trace) -> Result<BoundReport> {
    let alpha = trace.alpha();
    let coef = (alpha - 1.0) / (4.0 * alpha * alpha);
    let f0 = trace.header.initial_objective;
    let mut lhs_sum = 0.0;
    let mut fail_sum = 0.0;
    let mut points = Vec::new();
    for r in estimated(trace)? {
        lhs_sum += r.residual * r.residual / r.gamma;
        if r.success == Some(false) {
            fail_sum += 0.5 * (next_gamma(r) - r.gamma) * r.step_norm * r.step_norm;
        }
        let rhs = f0 - r.objective + fail_sum;
        points.push(BoundPoint { k: r.k, lhs: coef * lhs_sum, rhs, allowance: allowance(rhs) });
    }
    Ok(BoundReport::new("lemma1", points))
}

/// Bregman analogue with `D_l = D_h(x^l, x^{l-1})`:
/// `((alpha - 1) / 2) sum_l gamma_l D_l <= F(x^0) - F(x^k) + sum_{l failed} (gamma_{l+1} - gamma_l) D_l`.
pub fn bpgm_descent_check(trace: &Trace) -> Result<BoundReport> {
    let alpha = trace.alpha();
    let f0 = trace.header.initial_objective;
    let mut lhs_sum = 0.0;
    let mut fail_sum = 0.0;
    let mut points = Vec::new();
    for r in estimated(trace)? {
        let d = r.divergence.ok_or(Error::MissingField { field: "divergence", k: r.k })?;
        lhs_sum += r.gamma * d;
        if r.success == Some(false) {
            fail_sum += (next_gamma(r) - r.gamma) * d;
        }
        let rhs = f0 - r.objective + fail_sum;
        points.push(BoundPoint { k: r.k, lhs: 0.5 * (alpha - 1.0) * lhs_sum, rhs, allowance: allowance(rhs) });
    }
    Ok(BoundReport::new("bpgm-descent", points))
}

/// On successful proximal-gradient steps,
/// `F(x^{k-1}) - F(x^k) >= ((alpha - 1) / 4) gamma_k ||x^k - x^{k-1}||^2 - 1e-9`.
pub fn success_descent_check(trace: &Trace) -> Result<BoundReport> {
    let alpha = trace.alpha();
    let mut prev = trace.header.initial_objective;
    let mut points = Vec::new();
    for r in &trace.records {
        if r.success == Some(true) {
            let lhs = 0.25 * (alpha - 1.0) * r.gamma * r.step_norm * r.step_norm;
            points.push(BoundPoint { k: r.k, lhs, rhs: prev - r.objective, allowance: 1e-9 });
        }
        prev = r.objective;
    }
    Ok(BoundReport::new("success-descent", points))
}

fn max_over_failures(trace: &Trace, f: impl Fn(&IterationRecord) -> f64) -> f64 {
    trace.records.iter().filter(|r| r.success == Some(false)).map(f).fold(0.0, f64::max)
}

fn min_residual_bound(name: &str, trace: &Trace, bound: impl Fn(f64) -> f64) -> BoundReport {
    let mut best = f64::INFINITY;
    let points = trace
        .records
        .iter()
        .map(|r| {
            best = best.min(r.residual);
            let rhs = bound(r.k as f64);
            BoundPoint { k: r.k, lhs: best, rhs, allowance: allowance(rhs) }
        })
        .collect();
    BoundReport::new(name, points)
}

fn delta(trace: &Trace, f_star: f64) -> f64 {
    (trace.header.initial_objective - f_star).max(0.0)
}

/// `min_{l<=k} r_l <= sqrt(2 alpha^2 M (2 Delta + C) / ((alpha - 1) k))` with
/// `M = max{L0, L}` and `C = (M - L0) max_{l failed} ||x^l - x^{l-1}||^2`.
pub fn theorem1_bound_check(trace: &Trace, l_known: f64, f_star: f64) -> BoundReport {
    let (alpha, l0) = (trace.alpha(), trace.l0());
    let m = l0.max(l_known);
    let c = (m - l0) * max_over_failures(trace, |r| r.step_norm * r.step_norm);
    let d = delta(trace, f_star);
    min_residual_bound("theorem1", trace, |k| (2.0 * alpha * alpha * m * (2.0 * d + c) / ((alpha - 1.0) * k)).sqrt())
}

/// Bregman rate with kernel modulus `sigma`:
/// `min_{l<=k} r_l <= sqrt(4 alpha^2 M (Delta + C) / ((alpha - 1) sigma k))`,
/// `C = (M - L0) max_{l failed} D_h(x^l, x^{l-1})`.
pub fn theorem4_bound_check(trace: &Trace, l_known: f64, sigma: f64, f_star: f64) -> Result<BoundReport> {
    let (alpha, l0) = (trace.alpha(), trace.l0());
    let m = l0.max(l_known);
    if let Some(r) = trace.records.iter().find(|r| r.success == Some(false) && r.divergence.is_none()) {
        return Err(Error::MissingField { field: "divergence", k: r.k });
    }
    let c = (m - l0) * max_over_failures(trace, |r| r.divergence.unwrap_or(0.0));
    let d = delta(trace, f_star);
    Ok(min_residual_bound("theorem4", trace, |k| {
        (4.0 * alpha * alpha * m * (d + c) / ((alpha - 1.0) * sigma * k)).sqrt()
    }))
}

/// Conditional-gradient rate on the Frank-Wolfe gap:
/// `min G_l <= max{A / k, sqrt(alpha M D_g^2 A / k)}` with
/// `A = (4 alpha L0 Delta + 2 C) / ((2 alpha - 1) L0)` and `C = (M - L0) max_{l failed} G_l`.
pub fn theorem5_bound_check(trace: &Trace, l_known: f64, diameter: f64, f_star: f64) -> BoundReport {
    let (alpha, l0) = (trace.alpha(), trace.l0());
    let m = l0.max(l_known);
    let c = (m - l0) * max_over_failures(trace, |r| r.residual);
    let a = (4.0 * alpha * l0 * delta(trace, f_star) + 2.0 * c) / ((2.0 * alpha - 1.0) * l0);
    min_residual_bound("theorem5", trace, |k| (a / k).max((alpha * m * diameter * diameter * a / k).sqrt()))
}

/// Riemannian rate:
/// `min ||grad f|| <= sqrt(2 M (2 alpha^2 L0^2 Delta + C) / ((2 alpha - 1) L0^2 k))`,
/// `C = (M - L0) max_{l failed} ||grad f(x^{l-1})||^2`.
pub fn theorem6_bound_check(trace: &Trace, l_known: f64, f_star: f64) -> BoundReport {
    let (alpha, l0) = (trace.alpha(), trace.l0());
    let m = l0.max(l_known);
    let c = (m - l0) * max_over_failures(trace, |r| r.residual * r.residual);
    let d = delta(trace, f_star);
    min_residual_bound("theorem6", trace, |k| {
        (2.0 * m * (2.0 * alpha * alpha * l0 * l0 * d + c) / ((2.0 * alpha - 1.0) * l0 * l0 * k)).sqrt()
    })
}

/// `gamma_k <= max{L0, L} + 1e-9` at every record.
pub fn gamma_ceiling_check(trace: &Trace, l_known: f64) -> BoundReport {
    let cap = trace.l0().max(l_known);
    let points = trace.records.iter().map(|r| BoundPoint { k: r.k, lhs: r.gamma, rhs: cap, allowance: 1e-9 }).collect();
    BoundReport::new("gamma-ceiling", points)
}

/// `gamma_1 = L0` and `gamma_k` nondecreasing.
pub fn gamma_monotone(trace: &Trace) -> bool {
    trace.records.first().is_none_or(|r| r.gamma == trace.l0())
        && trace.records.windows(2).all(|w| w[1].gamma >= w[0].gamma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCensus {
    pub count: usize,
    pub bound: usize,
    pub pass: bool,
}

/// Observed failures against `ceil(log_beta(max{L0, L} / L0))`.
pub fn failure_census(trace: &Trace, l_known: f64) -> Result<FailureCensus> {
    let beta = beta_of(trace)?;
    let l0 = trace.l0();
    let ratio = l0.max(l_known) / l0;
    let bound = if ratio <= 1.0 { 0 } else { (ratio.ln() / beta.ln()).ceil() as usize };
    let count = trace.records.iter().filter(|r| r.success == Some(false)).count();
    Ok(FailureCensus { count, bound, pass: count <= bound })
}
