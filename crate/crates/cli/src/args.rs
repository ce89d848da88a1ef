use std::path::PathBuf;

use autocond::solvers::{SolverKind, StepConvention};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "autocond", version, about = "Linesearch-free auto-conditioned first-order methods")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one solver on one instance and write its trace.
    Run(RunArgs),
    /// Run a comparison grid; one trace per cell plus a summary table.
    Sweep(SweepArgs),
    /// Apply bound diagnostics to a trace file; exits 1 on a violation.
    Check(CheckArgs),
    /// Validate a LIBSVM file.
    Parse(ParseArgs),
    /// Write a seeded synthetic instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InstanceId {
    LogregTrimmed,
    QuadraticTrimmed,
    Holder,
    Quartic,
    SimplexQuadratic,
    SphereRayleigh,
    StiefelBrockett,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Ridge {
    /// `L = ||A||^2 / (4m) + lambda1`.
    #[default]
    Lambda1,
    /// `L = ||A||^2 / (4m) + lambda2`.
    Lambda2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelId {
    Euclidean,
    Quartic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Constant step `1.1 L` against AC-PGM for each theta.
    Logistic,
    /// Armijo, reduced Armijo and AC-RGM for each theta on the Brockett cost.
    Stiefel,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[arg(long, value_enum)]
    pub instance: InstanceId,
    /// LIBSVM file for `logreg-trimmed`; synthetic data when absent.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Samples (logistic) or sensing vectors (quartic).
    #[arg(long, default_value_t = 200)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// Stiefel column count.
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    /// Restrict the Holder instance to `[-1, 1]^n`.
    #[arg(long)]
    pub boxed: bool,
    /// Smallest eigenvalue of the quadratic.
    #[arg(long, default_value_t = 1e-3)]
    pub min_eig: f64,
    /// Trimmed-l1 weight of the quadratic instance.
    #[arg(long, default_value_t = 0.05)]
    pub lambda2: f64,
    /// Entries exempt from the quadratic instance's penalty.
    #[arg(long, default_value_t = 5)]
    pub kappa: usize,
    #[arg(long, value_enum, default_value_t)]
    pub ridge: Ridge,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ArmijoArgs {
    #[arg(long, default_value_t = 1e-4)]
    pub armijo_sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    pub armijo_t: f64,
    /// First trial step comes from `L~` and this factor.
    #[arg(long, default_value_t = 1e-3)]
    pub armijo_s_factor: f64,
    /// `inverse`: s = 1 / (factor L~); `literal`: s = factor L~.
    #[arg(long, default_value = "inverse")]
    pub armijo_s_convention: StepConvention,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub solver: SolverKind,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// 1.1 for proximal methods, 0.6 for conditional-gradient and Riemannian ones.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// `L0 = theta * L` (`L~` on manifolds). Default 0.01.
    #[arg(long, conflicts_with = "l0_abs")]
    pub l0_theta: Option<f64>,
    #[arg(long)]
    pub l0_abs: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    /// 1e-4 for the Armijo baselines, 1e-6 otherwise.
    #[arg(long)]
    pub tol: Option<f64>,
    /// The constant-step baseline uses `gamma = factor * L`.
    #[arg(long, default_value_t = 1.1)]
    pub gamma_factor: f64,
    /// Bregman kernel for `ac-bpgm`; quartic on the quartic instance by default.
    #[arg(long, value_enum)]
    pub kernel: Option<KernelId>,
    #[command(flatten)]
    pub armijo: ArmijoArgs,
    /// Trace CSV path; the JSON sidecar goes next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// LIBSVM file for the logistic experiment.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub m: usize,
    /// 50 for logistic, 25 for Stiefel.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated; defaults to 0.05,0.01,0.005,0.001.
    #[arg(long, value_delimiter = ',')]
    pub thetas: Vec<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub ridge: Ridge,
    #[command(flatten)]
    pub armijo: ArmijoArgs,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub lemma1: bool,
    /// Per-step decrease on accepted proximal-gradient steps.
    #[arg(long)]
    pub descent: bool,
    #[arg(long)]
    pub theorem1: bool,
    #[arg(long)]
    pub theorem5: bool,
    #[arg(long)]
    pub theorem6: bool,
    /// `gamma_k <= max{L0, L}` and monotone.
    #[arg(long)]
    pub ceiling: bool,
    /// Failure count against its logarithmic bound.
    #[arg(long)]
    pub census: bool,
    /// Smoothness constant; defaults to the one recorded in the sidecar.
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Lower bound on the optimal value; never used above the best observed objective.
    #[arg(long)]
    pub f_star: Option<f64>,
    /// Feasible-set diameter for theorem 5.
    #[arg(long)]
    pub diameter: Option<f64>,
    /// Print reports as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// LIBSVM text for `logreg-trimmed`, JSON otherwise.
    #[arg(long)]
    pub out: PathBuf,
}
