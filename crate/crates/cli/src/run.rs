use autocond::dataio::write_trace_csv;
use autocond::instances::QuarticKernel;
use autocond::numerics::DenseMatrix;
use autocond::oracles::{CompositeProblem, EuclideanKernel, RiemannianProblem};
use autocond::solvers::{
    ac_bpgm, ac_cgm, ac_pgm, ac_rgm, pgm_constant, rgm_armijo, ArmijoConfig, SolverConfig, SolverKind, Trace,
};

use crate::args::{KernelId, RunArgs};
use crate::instance::{build, Built, Instance, Start};
use crate::CliError;

const DEFAULT_THETA: f64 = 0.01;

fn default_alpha(kind: SolverKind) -> f64 {
    match kind {
        SolverKind::AcCgm | SolverKind::AcRgm => 0.6,
        _ => 1.1,
    }
}

fn default_tol(kind: SolverKind) -> f64 {
    match kind {
        SolverKind::Armijo | SolverKind::ReducedArmijo => 1e-4,
        _ => 1e-6,
    }
}

fn mismatch(kind: SolverKind, instance: &str) -> CliError {
    CliError::Usage(format!("solver `{kind}` does not apply to instance `{instance}`"))
}

fn config(args: &RunArgs, built: &Built) -> Result<SolverConfig, CliError> {
    let kind = args.solver;
    let tol = args.tol.unwrap_or(default_tol(kind));
    let reference = || {
        built.reference.ok_or_else(|| {
            CliError::Usage(format!(
                "instance `{}` has no reference constant; pass --l0-abs",
                built.provenance.instance
            ))
        })
    };
    if matches!(kind, SolverKind::Armijo | SolverKind::ReducedArmijo) {
        let a = &args.armijo;
        let s = a.armijo_s_convention.initial_step(reference()?, a.armijo_s_factor);
        let cfg = SolverConfig::armijo(ArmijoConfig { sigma: a.armijo_sigma, t: a.armijo_t, s });
        return Ok(cfg.max_iter(args.max_iter).tol(tol));
    }
    let l0 = match (args.l0_abs, args.l0_theta) {
        (Some(l0), _) => l0,
        (None, theta) => theta.unwrap_or(DEFAULT_THETA) * reference()?,
    };
    let alpha = args.alpha.unwrap_or(default_alpha(kind));
    Ok(SolverConfig::new(alpha, l0).max_iter(args.max_iter).tol(tol))
}

fn composite<P: CompositeProblem>(
    p: &P,
    x0: &[f64],
    args: &RunArgs,
    cfg: &SolverConfig,
    built: &Built,
) -> Result<Trace, CliError> {
    let name = &built.provenance.instance;
    Ok(match args.solver {
        SolverKind::AcPgm => ac_pgm(p, x0, cfg)?,
        SolverKind::PgmConstant => {
            let l = built
                .smoothness
                .ok_or_else(|| CliError::Usage(format!("instance `{name}` has no known L for a constant step")))?;
            pgm_constant(p, x0, args.gamma_factor * l, cfg.max_iter, cfg.residual_tol)?
        }
        SolverKind::AcBpgm => match args.kernel {
            Some(KernelId::Quartic) => {
                return Err(CliError::Usage("the quartic kernel is only available on the quartic instance".into()))
            }
            _ => ac_bpgm(p, &EuclideanKernel::new(p), x0, cfg)?,
        },
        other => return Err(mismatch(other, name)),
    })
}

fn riemannian<P: RiemannianProblem>(
    p: &P,
    x0: &DenseMatrix,
    kind: SolverKind,
    cfg: &SolverConfig,
    name: &str,
) -> Result<Trace, CliError> {
    Ok(match kind {
        SolverKind::AcRgm => ac_rgm(p, x0, cfg)?,
        SolverKind::Armijo => rgm_armijo(p, x0, cfg, false)?,
        SolverKind::ReducedArmijo => rgm_armijo(p, x0, cfg, true)?,
        other => return Err(mismatch(other, name)),
    })
}

pub fn solve(args: &RunArgs, built: &Built) -> Result<Trace, CliError> {
    let cfg = config(args, built)?;
    let kind = args.solver;
    let name = built.provenance.instance.as_str();
    let trace = match (&built.instance, &built.start) {
        (Instance::Logistic(p), Start::Vector(x0)) => composite(p, x0, args, &cfg, built)?,
        (Instance::Quadratic(p), Start::Vector(x0)) => composite(p, x0, args, &cfg, built)?,
        (Instance::Holder(p), Start::Vector(x0)) => composite(p, x0, args, &cfg, built)?,
        (Instance::Quartic(p), Start::Vector(x0)) => match (kind, args.kernel) {
            (SolverKind::AcBpgm, None | Some(KernelId::Quartic)) => {
                let kernel: QuarticKernel = p.kernel();
                ac_bpgm(p, &kernel, x0, &cfg)?
            }
            _ => composite(p, x0, args, &cfg, built)?,
        },
        (Instance::Simplex(p), Start::Vector(x0)) => match kind {
            SolverKind::AcCgm => ac_cgm(p, x0, &cfg)?,
            other => return Err(mismatch(other, name)),
        },
        (Instance::Sphere(p), Start::Matrix(x0)) => riemannian(p, x0, kind, &cfg, name)?,
        (Instance::Stiefel(p), Start::Matrix(x0)) => riemannian(p, x0, kind, &cfg, name)?,
        _ => unreachable!("start point shape follows the instance"),
    };
    Ok(trace.with_provenance(built.provenance.clone()))
}

pub fn summary_line(trace: &Trace) -> String {
    let s = trace.summary();
    let retr = s.total_retractions.map(|r| format!(" retractions={r}")).unwrap_or_default();
    format!(
        "{} on {}: {:?} after {} iterations{retr}, failures={}, min residual={:e}, objective={:e}",
        trace.header.solver,
        trace.header.provenance.instance,
        trace.termination,
        s.iterations,
        s.failures,
        s.min_residual,
        s.final_objective
    )
}

pub fn run(args: &RunArgs) -> Result<(), CliError> {
    let built = build(&args.instance)?;
    let trace = solve(args, &built)?;
    println!("{}", summary_line(&trace));
    if let Some(out) = &args.out {
        write_trace_csv(&trace, out)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
