use super::{ensure_finite, IterationRecord, Recorder, SolverConfig, SolverKind, Termination, Trace, STEP_UNDERFLOW};
use crate::error::{Error, Result};
use crate::numerics::vector::{dot, norm_sq, sub};
use crate::oracles::LmoProblem;

/// Auto-conditioned conditional gradient (Frank-Wolfe).
///
/// `v^k = lmo(grad f(x^{k-1}))`, gap `G_k = <grad f(x^{k-1}), x^{k-1} - v^k> + g(x^{k-1}) - g(v^k)`,
/// `tau_k = min{1, G_k / (alpha gamma_k ||x^{k-1} - v^k||^2)}`. The stopping
/// test on `G_k` happens before `tau_k`; that record carries no `tau`.
pub fn ac_cgm<P: LmoProblem + ?Sized>(problem: &P, x0: &[f64], cfg: &SolverConfig) -> Result<Trace> {
    cfg.validate(SolverKind::AcCgm)?;
    if x0.len() != problem.dim() {
        return Err(Error::InvalidArgument(format!(
            "x0 has length {}, problem has dimension {}",
            x0.len(),
            problem.dim()
        )));
    }
    let f0 = problem.value(x0);
    if !f0.is_finite() {
        return Err(Error::OutOfDomain);
    }
    let alpha = cfg.alpha;
    let mut rec = Recorder::new(SolverKind::AcCgm, cfg, f0, x0);
    let beta = rec.beta();
    let mut x = x0.to_vec();
    let mut objective = f0;
    let mut gamma = cfg.l0;

    for k in 1..=cfg.max_iter {
        let grad = problem.smooth_gradient(&x);
        let v = problem.lmo(&grad)?;
        let d = sub(&v, &x);
        let gap = -dot(&grad, &d) + problem.nonsmooth_value(&x) - problem.nonsmooth_value(&v);
        ensure_finite(k, &[gap])?;
        let dd = norm_sq(&d);

        let stop = if gap <= cfg.residual_tol {
            Some(Termination::Converged)
        } else if dd < STEP_UNDERFLOW {
            Some(Termination::Stalled)
        } else {
            None
        };
        if let Some(t) = stop {
            rec.push(IterationRecord::new(k, gamma, gap, objective, 0.0));
            return Ok(rec.finish(t));
        }

        let tau = (gap / (alpha * gamma * dd)).min(1.0);
        let x_new: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + tau * di).collect();
        let step_sq = norm_sq(&sub(&x_new, &x));
        let step_norm = step_sq.sqrt();
        let new_objective = problem.value(&x_new);
        ensure_finite(k, &[new_objective])?;
        let mut record = IterationRecord::new(k, gamma, gap, new_objective, step_norm);
        record.tau = Some(tau);
        if step_sq < STEP_UNDERFLOW {
            rec.push(record);
            rec.iterate(&x_new);
            return Ok(rec.finish(Termination::Stalled));
        }
        let l_k = 2.0 * problem.linearization_gap(&x, &x_new, &grad) / step_sq;
        ensure_finite(k, &[l_k])?;
        rec.push(record.with_estimate(l_k, beta));
        rec.iterate(&x_new);
        gamma = gamma.max(l_k);
        x = x_new;
        objective = new_objective;
    }
    Ok(rec.finish(Termination::MaxIterations))
}
