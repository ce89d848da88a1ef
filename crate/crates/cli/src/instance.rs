use autocond::dataio::read_libsvm;
use autocond::experiments::{LogisticSetup, StiefelSetup};
use autocond::instances::synth::{gaussian_vec, rng};
use autocond::instances::{
    retraction_curvature_estimate, synthetic_logistic_dataset, HolderToy, LogisticTrimmedL1, NonconvexQuadraticSimplex,
    Provenance, QuadraticTrimmedL1, RelSmoothQuartic, RidgeConvention, SphereRayleigh, StiefelBrockett,
};
use autocond::numerics::DenseMatrix;
use autocond::oracles::{LmoProblem, RiemannianProblem, SmoothObjective};

use crate::args::{InstanceArgs, InstanceId, Ridge};
use crate::CliError;

pub enum Instance {
    Logistic(LogisticTrimmedL1),
    Quadratic(QuadraticTrimmedL1),
    Holder(HolderToy),
    Quartic(RelSmoothQuartic),
    Simplex(NonconvexQuadraticSimplex),
    Sphere(SphereRayleigh),
    Stiefel(StiefelBrockett),
}

pub enum Start {
    Vector(Vec<f64>),
    Matrix(DenseMatrix),
}

pub struct Built {
    pub instance: Instance,
    pub start: Start,
    pub provenance: Provenance,
    /// What `--l0-theta` multiplies: `L` when known, `L~` on manifolds.
    pub reference: Option<f64>,
    /// Known smoothness constant.
    pub smoothness: Option<f64>,
}

impl InstanceId {
    pub fn id(self) -> &'static str {
        match self {
            InstanceId::LogregTrimmed => "logreg-trimmed",
            InstanceId::QuadraticTrimmed => "quadratic-trimmed",
            InstanceId::Holder => "holder",
            InstanceId::Quartic => "quartic",
            InstanceId::SimplexQuadratic => "simplex-quadratic",
            InstanceId::SphereRayleigh => "sphere-rayleigh",
            InstanceId::StiefelBrockett => "stiefel-brockett",
        }
    }
}

impl From<Ridge> for RidgeConvention {
    fn from(r: Ridge) -> Self {
        match r {
            Ridge::Lambda1 => RidgeConvention::Lambda1,
            Ridge::Lambda2 => RidgeConvention::Lambda2,
        }
    }
}

fn gaussian_start(seed: u64, n: usize) -> Vec<f64> {
    gaussian_vec(&mut rng(seed.wrapping_add(1)), n)
}

fn finish(provenance: Provenance, smoothness: Option<f64>, lower: Option<f64>) -> Provenance {
    let p = match smoothness {
        Some(l) => provenance.with_param("L", l),
        None => provenance,
    };
    match lower {
        Some(b) => p.with_param("lower_bound", b),
        None => p,
    }
}

pub fn logistic_setup(a: &InstanceArgs) -> Result<LogisticSetup, CliError> {
    match &a.data {
        Some(path) => Ok(LogisticSetup::from_dataset(read_libsvm(path)?, a.ridge.into(), None)?),
        None => Ok(LogisticSetup::from_dataset(
            synthetic_logistic_dataset(a.m, a.n, a.seed)?,
            a.ridge.into(),
            Some(a.seed),
        )?),
    }
}

/// Builds the instance, its start point and provenance. Component seeds:
/// instance `seed`, start `seed + 1`, curvature probe `seed + 2`.
pub fn build(a: &InstanceArgs) -> Result<Built, CliError> {
    let seed = a.seed;
    let dims = |d: Vec<usize>| Provenance::new(a.instance.id(), Some(seed), d);
    let built = match a.instance {
        InstanceId::LogregTrimmed => {
            let setup = logistic_setup(a)?;
            let n = setup.problem.dim();
            let l = setup.problem.smoothness();
            let provenance = finish(setup.provenance, None, setup.problem.lower_bound_hint());
            Built {
                start: Start::Vector(vec![0.0; n]),
                provenance,
                reference: Some(l),
                smoothness: Some(l),
                instance: Instance::Logistic(setup.problem),
            }
        }
        InstanceId::QuadraticTrimmed => {
            let p = QuadraticTrimmedL1::log_spectrum(a.n, a.min_eig, a.lambda2, a.kappa, seed)?;
            let l = p.known_smoothness();
            let provenance = dims(vec![a.n])
                .with_param("min_eig", a.min_eig)
                .with_param("lambda2", a.lambda2)
                .with_param("kappa", a.kappa as f64);
            Built {
                start: Start::Vector(vec![0.0; a.n]),
                provenance: finish(provenance, l, p.lower_bound_hint()),
                reference: l,
                smoothness: l,
                instance: Instance::Quadratic(p),
            }
        }
        InstanceId::Holder => {
            let p = HolderToy::new(a.nu, a.n, a.boxed)?;
            let mut x0 = gaussian_start(seed, a.n);
            if a.boxed {
                x0.iter_mut().for_each(|v| *v = v.clamp(-1.0, 1.0));
            }
            let provenance = dims(vec![a.n]).with_param("nu", a.nu).with_param("boxed", f64::from(u8::from(a.boxed)));
            Built {
                start: Start::Vector(x0),
                provenance: finish(provenance, None, p.lower_bound_hint()),
                reference: None,
                smoothness: None,
                instance: Instance::Holder(p),
            }
        }
        InstanceId::Quartic => {
            let p = RelSmoothQuartic::synthetic(a.m, a.n, seed)?;
            let l = p.relative_smoothness();
            let provenance = dims(vec![a.m, a.n]).with_param("sigma", 1.0);
            Built {
                start: Start::Vector(gaussian_start(seed, a.n)),
                provenance: finish(provenance, Some(l), p.lower_bound_hint()),
                reference: Some(l),
                smoothness: Some(l),
                instance: Instance::Quartic(p),
            }
        }
        InstanceId::SimplexQuadratic => {
            let p = NonconvexQuadraticSimplex::synthetic(a.n, seed)?;
            let l = p.known_smoothness();
            let provenance = dims(vec![a.n]).with_param("diameter", p.diameter());
            Built {
                start: Start::Vector(p.barycenter()),
                provenance: finish(provenance, l, p.lower_bound_hint()),
                reference: l,
                smoothness: l,
                instance: Instance::Simplex(p),
            }
        }
        InstanceId::SphereRayleigh => {
            let p = SphereRayleigh::synthetic(a.n, seed)?;
            let x0 = p.random_point(seed.wrapping_add(1));
            let l_tilde = retraction_curvature_estimate(&p, &x0, seed.wrapping_add(2))?;
            let l = RiemannianProblem::known_smoothness(&p);
            let provenance = dims(vec![a.n]).with_param("l_tilde", l_tilde);
            Built {
                start: Start::Matrix(x0),
                provenance: finish(provenance, l, RiemannianProblem::lower_bound_hint(&p)),
                reference: Some(l_tilde),
                smoothness: l,
                instance: Instance::Sphere(p),
            }
        }
        InstanceId::StiefelBrockett => {
            let setup = StiefelSetup::new(a.n, a.r, seed)?;
            let lower = setup.problem.lower_bound_hint();
            Built {
                start: Start::Matrix(setup.x0),
                provenance: finish(setup.provenance, None, lower),
                reference: Some(setup.l_tilde),
                smoothness: None,
                instance: Instance::Stiefel(setup.problem),
            }
        }
    };
    Ok(built)
}
