use super::{ensure_finite, IterationRecord, Recorder, SolverConfig, SolverKind, Termination, Trace, STEP_UNDERFLOW};
use crate::error::{Error, Result};
use crate::numerics::vector::{norm_sq, sub};
use crate::oracles::CompositeProblem;

/// Auto-conditioned proximal gradient.
///
/// `x^k = prox_{g/(alpha gamma_k)}(x^{k-1} - grad f(x^{k-1}) / (alpha gamma_k))`
/// and `L_k = 2 (f(x^k) - f(x^{k-1}) - <grad f(x^{k-1}), x^k - x^{k-1}>) / ||x^k - x^{k-1}||^2`.
/// The run stops once `alpha gamma_k ||x^k - x^{k-1}|| <= residual_tol`,
/// before `L_k` is formed.
pub fn ac_pgm<P: CompositeProblem + ?Sized>(problem: &P, x0: &[f64], cfg: &SolverConfig) -> Result<Trace> {
    cfg.validate(SolverKind::AcPgm)?;
    proximal_gradient(problem, x0, cfg, SolverKind::AcPgm)
}

/// Proximal gradient with the fixed inverse stepsize `gamma`.
pub fn pgm_constant<P: CompositeProblem + ?Sized>(
    problem: &P,
    x0: &[f64],
    gamma: f64,
    max_iter: usize,
    tol: f64,
) -> Result<Trace> {
    let cfg = SolverConfig::new(1.0, gamma).max_iter(max_iter).tol(tol);
    cfg.validate(SolverKind::PgmConstant)?;
    proximal_gradient(problem, x0, &cfg, SolverKind::PgmConstant)
}

pub(super) fn check_start<P: CompositeProblem + ?Sized>(problem: &P, x0: &[f64]) -> Result<f64> {
    if x0.len() != problem.dim() {
        return Err(Error::InvalidArgument(format!(
            "x0 has length {}, problem has dimension {}",
            x0.len(),
            problem.dim()
        )));
    }
    let f0 = problem.value(x0);
    if f0.is_nan() || f0 == f64::INFINITY {
        return Err(Error::OutOfDomain);
    }
    Ok(f0)
}

fn proximal_gradient<P: CompositeProblem + ?Sized>(
    problem: &P,
    x0: &[f64],
    cfg: &SolverConfig,
    kind: SolverKind,
) -> Result<Trace> {
    let f0 = check_start(problem, x0)?;
    let adaptive = kind.is_auto_conditioned();
    let alpha = cfg.alpha;
    let mut rec = Recorder::new(kind, cfg, f0, x0);
    let beta = rec.beta();
    let mut x = x0.to_vec();
    let mut gamma = cfg.l0;

    for k in 1..=cfg.max_iter {
        let grad = problem.smooth_gradient(&x);
        let ag = alpha * gamma;
        let y: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi - gi / ag).collect();
        let x_new = problem.prox(&y, ag)?;
        let step_sq = norm_sq(&sub(&x_new, &x));
        let step_norm = step_sq.sqrt();
        let residual = ag * step_norm;
        let objective = problem.value(&x_new);
        ensure_finite(k, &[residual, objective])?;
        let record = IterationRecord::new(k, gamma, residual, objective, step_norm);

        let stop = if residual <= cfg.residual_tol {
            Some(Termination::Converged)
        } else if step_sq < STEP_UNDERFLOW {
            Some(Termination::Stalled)
        } else {
            None
        };
        if let Some(t) = stop {
            rec.push(record);
            rec.iterate(&x_new);
            return Ok(rec.finish(t));
        }

        let l_k = 2.0 * problem.linearization_gap(&x, &x_new, &grad) / step_sq;
        ensure_finite(k, &[l_k])?;
        rec.push(record.with_estimate(l_k, beta));
        rec.iterate(&x_new);
        if adaptive {
            gamma = gamma.max(l_k);
        }
        x = x_new;
    }
    Ok(rec.finish(Termination::MaxIterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::QuadraticTrimmedL1;

    #[test]
    fn isotropic_quadratic_contracts_at_fixed_rate() {
        let l = 2.0;
        let l0 = 5.0;
        let alpha = 1.1;
        let p = QuadraticTrimmedL1::isotropic(3, l);
        let x0 = vec![1.0, -2.0, 0.5];
        let cfg = SolverConfig::new(alpha, l0).max_iter(30).tol(0.0).record_iterates(true);
        let t = ac_pgm(&p, &x0, &cfg).unwrap();
        let factor = 1.0 - l / (alpha * l0);
        for (k, r) in t.records.iter().enumerate() {
            assert_eq!(r.gamma, l0);
            assert!((r.l_k.unwrap() - l).abs() < 1e-12);
            assert_eq!(r.success, Some(true));
            let expected: Vec<f64> = x0.iter().map(|v| v * factor.powi(k as i32 + 1)).collect();
            for (a, b) in t.iterates[k + 1].iter().zip(&expected) {
                assert!((a - b).abs() < 1e-14);
            }
        }
        assert_eq!(t.summary().failures, 0);
        assert_eq!(t.termination, Termination::MaxIterations);
    }

    #[test]
    fn stationary_start_stops_at_first_iteration() {
        let p = QuadraticTrimmedL1::isotropic(4, 1.0);
        let t = ac_pgm(&p, &[0.0; 4], &SolverConfig::new(1.1, 1.0)).unwrap();
        assert_eq!(t.records.len(), 1);
        assert_eq!(t.records[0].residual, 0.0);
        assert_eq!(t.records[0].l_k, None);
        assert_eq!(t.termination, Termination::Converged);
    }

    #[test]
    fn constant_step_matches_gradient_descent() {
        let p = QuadraticTrimmedL1::log_spectrum(6, 1e-2, 0.0, 0, 3).unwrap();
        let gamma = 1.1;
        let t = {
            let mut cfg = SolverConfig::new(1.0, gamma).max_iter(25).tol(0.0).record_iterates(true);
            cfg.validate(SolverKind::PgmConstant).unwrap();
            cfg.record_iterates = true;
            proximal_gradient(&p, &[1.0; 6], &cfg, SolverKind::PgmConstant).unwrap()
        };
        let mut x = vec![1.0; 6];
        for k in 0..25 {
            let g = crate::oracles::SmoothObjective::smooth_gradient(&p, &x);
            x = x.iter().zip(&g).map(|(a, b)| a - b / gamma).collect();
            for (a, b) in t.iterates[k + 1].iter().zip(&x) {
                assert!((a - b).abs() <= 1e-14);
            }
            assert_eq!(t.records[k].gamma, gamma);
        }
        let direct = pgm_constant(&p, &[1.0; 6], gamma, 25, 0.0).unwrap();
        assert_eq!(direct.records.len(), 25);
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let p = crate::instances::HolderToy::new(0.5, 2, true).unwrap();
        assert!(matches!(ac_pgm(&p, &[2.0, 0.0], &SolverConfig::new(1.1, 1.0)), Err(Error::OutOfDomain)));
    }
}
