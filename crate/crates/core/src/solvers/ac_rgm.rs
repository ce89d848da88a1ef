use super::{ensure_finite, IterationRecord, Recorder, SolverConfig, SolverKind, Termination, Trace, STEP_UNDERFLOW};
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::oracles::{Manifold, RiemannianProblem};

pub(super) fn check_point<P: RiemannianProblem + ?Sized>(problem: &P, x0: &DenseMatrix) -> Result<f64> {
    let m = problem.manifold();
    if x0.shape() != m.ambient_shape() {
        return Err(Error::InvalidArgument(format!("X0 has shape {:?}, expected {:?}", x0.shape(), m.ambient_shape())));
    }
    let err = m.feasibility_error(x0);
    if !(err <= 1e-8) {
        return Err(Error::InvalidArgument(format!("X0 is off the manifold (error {err:e})")));
    }
    let f0 = problem.value(x0);
    if !f0.is_finite() {
        return Err(Error::NonFinite { k: 0 });
    }
    Ok(f0)
}

/// Auto-conditioned Riemannian gradient.
///
/// `tau_k = 1 / (alpha gamma_k)`, `X^k = R_{X^{k-1}}(-tau_k grad f(X^{k-1}))`, and
/// `L_k = 2 (f(X^k) - f(X^{k-1}) + tau_k ||grad||^2) / (tau_k^2 ||grad||^2)`.
/// Exactly one retraction per step; the stopping test on `||grad f||` comes
/// first and its record carries no `tau`.
pub fn ac_rgm<P: RiemannianProblem + ?Sized>(problem: &P, x0: &DenseMatrix, cfg: &SolverConfig) -> Result<Trace> {
    cfg.validate(SolverKind::AcRgm)?;
    let f0 = check_point(problem, x0)?;
    let m = problem.manifold();
    let alpha = cfg.alpha;
    let mut rec = Recorder::new(SolverKind::AcRgm, cfg, f0, x0.as_slice());
    let beta = rec.beta();
    let mut x = x0.clone();
    let mut fx = f0;
    let mut gamma = cfg.l0;
    let mut retractions = 0u64;

    for k in 1..=cfg.max_iter {
        let grad = problem.riemannian_gradient(&x);
        let gn2 = m.inner(&x, &grad, &grad);
        let gn = gn2.sqrt();
        ensure_finite(k, &[gn])?;

        let stop = if gn <= cfg.residual_tol {
            Some(Termination::Converged)
        } else if gn2 < STEP_UNDERFLOW {
            Some(Termination::Stalled)
        } else {
            None
        };
        if let Some(t) = stop {
            let mut record = IterationRecord::new(k, gamma, gn, fx, 0.0);
            record.retr_cum = Some(retractions);
            rec.push(record);
            return Ok(rec.finish(t));
        }

        let tau = 1.0 / (alpha * gamma);
        let x_new = m.retract(&x, &grad.scale(-tau))?;
        retractions += 1;
        let f_new = problem.value(&x_new);
        let l_k = 2.0 * (f_new - fx + tau * gn2) / (tau * tau * gn2);
        ensure_finite(k, &[f_new, l_k])?;
        let mut record = IterationRecord::new(k, gamma, gn, f_new, x_new.sub(&x).frobenius_norm());
        record.tau = Some(tau);
        record.retr_cum = Some(retractions);
        rec.push(record.with_estimate(l_k, beta));
        rec.iterate(x_new.as_slice());
        gamma = gamma.max(l_k);
        x = x_new;
        fx = f_new;
    }
    Ok(rec.finish(Termination::MaxIterations))
}
