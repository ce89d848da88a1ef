use super::ac_pgm::check_start;
use super::{ensure_finite, IterationRecord, Recorder, SolverConfig, SolverKind, Termination, Trace, STEP_UNDERFLOW};
use crate::error::{Error, Result};
use crate::numerics::vector::{norm_sq, sub};
use crate::oracles::{BregmanKernel, CompositeProblem};

/// Auto-conditioned Bregman proximal gradient.
///
/// `x^k = kernel_step(grad f(x^{k-1}), x^{k-1}, alpha gamma_k)` and
/// `L_k = (f(x^k) - f(x^{k-1}) - <grad f(x^{k-1}), x^k - x^{k-1}>) / D_h(x^k, x^{k-1})`.
/// The residual is `alpha gamma_k ||x^k - x^{k-1}||`.
pub fn ac_bpgm<P, K>(problem: &P, kernel: &K, x0: &[f64], cfg: &SolverConfig) -> Result<Trace>
where
    P: CompositeProblem + ?Sized,
    K: BregmanKernel + ?Sized,
{
    cfg.validate(SolverKind::AcBpgm)?;
    let f0 = check_start(problem, x0)?;
    if !kernel.in_interior(x0) {
        return Err(Error::OutOfDomain);
    }
    let alpha = cfg.alpha;
    let mut rec = Recorder::new(SolverKind::AcBpgm, cfg, f0, x0);
    let beta = rec.beta();
    let mut x = x0.to_vec();
    let mut gamma = cfg.l0;

    for k in 1..=cfg.max_iter {
        let grad = problem.smooth_gradient(&x);
        let ag = alpha * gamma;
        let x_new = kernel.kernel_step(&grad, &x, ag)?;
        let step_sq = norm_sq(&sub(&x_new, &x));
        let step_norm = step_sq.sqrt();
        let residual = ag * step_norm;
        let objective = problem.value(&x_new);
        ensure_finite(k, &[residual, objective])?;
        let divergence = kernel.divergence(&x_new, &x);
        let mut record = IterationRecord::new(k, gamma, residual, objective, step_norm);
        record.divergence = Some(divergence);

        let stop = if residual <= cfg.residual_tol {
            Some(Termination::Converged)
        } else if step_sq < STEP_UNDERFLOW || !(divergence > 0.0) {
            Some(Termination::Stalled)
        } else {
            None
        };
        if let Some(t) = stop {
            rec.push(record);
            rec.iterate(&x_new);
            return Ok(rec.finish(t));
        }

        let l_k = problem.linearization_gap(&x, &x_new, &grad) / divergence;
        ensure_finite(k, &[l_k])?;
        rec.push(record.with_estimate(l_k, beta));
        rec.iterate(&x_new);
        gamma = gamma.max(l_k);
        x = x_new;
    }
    Ok(rec.finish(Termination::MaxIterations))
}
