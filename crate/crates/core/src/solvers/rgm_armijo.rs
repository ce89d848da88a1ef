use super::ac_rgm::check_point;
use super::{
    ensure_finite, IterationRecord, Recorder, SolverConfig, SolverKind, Termination, Trace, ARMIJO_MAX_TRIALS,
    STEP_UNDERFLOW,
};
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::oracles::{Manifold, RiemannianProblem};

/// Riemannian gradient with Armijo backtracking on `s t^m`, `m = 0, 1, ...`.
///
/// With `reduced`, each trial first tests sufficient decrease at the ambient
/// point `X - s t^m grad f(X)` and only retracts when that test passes. Every
/// retraction counts, including rejected trials. Records store the accepted
/// step in `tau` and its inverse in `gamma`.
pub fn rgm_armijo<P: RiemannianProblem + ?Sized>(
    problem: &P,
    x0: &DenseMatrix,
    cfg: &SolverConfig,
    reduced: bool,
) -> Result<Trace> {
    let kind = if reduced { SolverKind::ReducedArmijo } else { SolverKind::Armijo };
    cfg.validate(kind)?;
    let armijo = cfg.armijo.ok_or_else(|| Error::Config("missing Armijo parameters".into()))?;
    let f0 = check_point(problem, x0)?;
    let m = problem.manifold();
    let mut rec = Recorder::new(kind, cfg, f0, x0.as_slice());
    let mut x = x0.clone();
    let mut fx = f0;
    let mut retractions = 0u64;
    let mut last_gamma = 1.0 / armijo.s;

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
            let mut record = IterationRecord::new(k, last_gamma, gn, fx, 0.0);
            record.retr_cum = Some(retractions);
            rec.push(record);
            return Ok(rec.finish(t));
        }

        let mut accepted = None;
        let mut step = armijo.s;
        for _ in 0..=ARMIJO_MAX_TRIALS {
            let target = -armijo.sigma * step * gn2;
            if reduced {
                let surrogate = problem.value(&x.add_scaled(-step, &grad));
                if !(surrogate - fx <= target) {
                    step *= armijo.t;
                    continue;
                }
            }
            let candidate = m.retract(&x, &grad.scale(-step))?;
            retractions += 1;
            let fc = problem.value(&candidate);
            if fc - fx <= target {
                accepted = Some((candidate, fc));
                break;
            }
            step *= armijo.t;
        }
        let Some((x_new, f_new)) = accepted else {
            return Err(Error::StepUnderflow(ARMIJO_MAX_TRIALS as usize));
        };

        let stepsize = step;
        last_gamma = 1.0 / stepsize;
        let mut record = IterationRecord::new(k, last_gamma, gn, f_new, x_new.sub(&x).frobenius_norm());
        record.tau = Some(stepsize);
        record.retr_cum = Some(retractions);
        rec.push(record);
        rec.iterate(x_new.as_slice());
        x = x_new;
        fx = f_new;
    }
    Ok(rec.finish(Termination::MaxIterations))
}
