use serde::{Deserialize, Serialize};

use super::synth::{gaussian_vec, rng};
use super::trimmed::{trimmed_l1_prox, trimmed_l1_value};
use crate::dataio::SparseDataset;
use crate::error::{Error, Result};
use crate::numerics::vector::{dot, norm_sq};
use crate::numerics::{operator_norm, SparseMatrix};
use crate::oracles::{CompositeProblem, SmoothObjective};

/// Which ridge weight enters the closed-form curvature bound.
///
/// The smooth term carries `(lambda1 / 2) ||x||^2`, so `Lambda1` is the
/// mathematically consistent choice. `Lambda2` reproduces the variant that
/// adds the trimmed-l1 weight instead.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RidgeConvention {
    #[default]
    Lambda1,
    Lambda2,
}

/// `||A||_op^2 / (4 m) + ridge`.
pub fn logreg_smooth_constant(data: &SparseDataset, ridge: f64) -> Result<f64> {
    let m = data.n_samples();
    if m == 0 {
        return Err(Error::InvalidArgument("empty dataset".into()));
    }
    let op = operator_norm(&data.features)?;
    Ok(op * op / (4.0 * m as f64) + ridge)
}

/// `log(1 + exp(-t))` without overflow.
#[inline]
fn softplus_neg(t: f64) -> f64 {
    if t > 0.0 {
        (-t).exp().ln_1p()
    } else {
        -t + t.exp().ln_1p()
    }
}

/// `1 / (1 + exp(t))`.
#[inline]
fn sigmoid_neg(t: f64) -> f64 {
    if t >= 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + t.exp())
    }
}

/// `log1p(u) - u` without cancellation for small `u`.
fn log1p_minus_id(u: f64) -> f64 {
    if u.abs() < 1e-2 {
        // -u^2/2 + u^3/3 - ... up to u^10
        let mut term = u;
        let mut acc = 0.0;
        for k in 2..=10 {
            term *= u;
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            acc += sign * term / k as f64;
        }
        acc
    } else {
        u.ln_1p() - u
    }
}

/// `expm1(z) - z` without cancellation for small `z`.
fn expm1_minus_id(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        let mut term = z;
        let mut acc = 0.0;
        for k in 2..=10 {
            term *= z / k as f64;
            acc += term;
        }
        acc
    } else {
        z.exp_m1() - z
    }
}

/// Logistic loss `phi(t) = log(1 + e^{-t})` remainder
/// `phi(t + d) - phi(t) - phi'(t) d`.
fn logistic_remainder(t: f64, d: f64) -> f64 {
    let p = sigmoid_neg(t);
    if d.abs() > 30.0 {
        return softplus_neg(t + d) - softplus_neg(t) + p * d;
    }
    let u = p * (-d).exp_m1();
    (log1p_minus_id(u) + p * expm1_minus_id(-d)).max(0.0)
}

/// Regularised logistic regression with a trimmed-l1 penalty:
/// `f(x) = mean log(1 + exp(-b_i <a_i, x>)) + (lambda1/2) ||x||^2`,
/// `g(x) = lambda2 T_kappa(x)`.
#[derive(Clone, Debug)]
pub struct LogisticTrimmedL1 {
    data: SparseDataset,
    lambda1: f64,
    lambda2: f64,
    kappa: usize,
    smoothness: f64,
    ridge_convention: RidgeConvention,
}

impl LogisticTrimmedL1 {
    pub fn new(data: SparseDataset, lambda1: f64, lambda2: f64, kappa: usize) -> Result<Self> {
        Self::with_convention(data, lambda1, lambda2, kappa, RidgeConvention::Lambda1)
    }

    pub fn with_convention(
        data: SparseDataset,
        lambda1: f64,
        lambda2: f64,
        kappa: usize,
        ridge_convention: RidgeConvention,
    ) -> Result<Self> {
        if kappa > data.n_features() {
            return Err(Error::InvalidArgument(format!("kappa = {kappa} exceeds {} features", data.n_features())));
        }
        if !(lambda1 >= 0.0 && lambda2 >= 0.0) {
            return Err(Error::InvalidArgument("regularisation weights must be >= 0".into()));
        }
        let ridge = match ridge_convention {
            RidgeConvention::Lambda1 => lambda1,
            RidgeConvention::Lambda2 => lambda2,
        };
        let smoothness = logreg_smooth_constant(&data, ridge)?;
        Ok(Self { data, lambda1, lambda2, kappa, smoothness, ridge_convention })
    }

    /// Weights `lambda1 = 1e-2 / m`, `lambda2 = 10 / m`, `kappa = 10`
    /// (clamped to the feature count).
    pub fn with_default_weights(data: SparseDataset) -> Result<Self> {
        let m = data.n_samples() as f64;
        let kappa = 10.min(data.n_features());
        Self::new(data, 1e-2 / m, 10.0 / m, kappa)
    }

    pub fn data(&self) -> &SparseDataset {
        &self.data
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn ridge_convention(&self) -> RidgeConvention {
        self.ridge_convention
    }

    /// Closed-form curvature bound under the chosen ridge convention.
    pub fn smoothness(&self) -> f64 {
        self.smoothness
    }

    fn margins(&self, x: &[f64]) -> Vec<f64> {
        self.data.features.mul_vec(x).into_iter().zip(&self.data.labels).map(|(ax, b)| b * ax).collect()
    }
}

impl SmoothObjective for LogisticTrimmedL1 {
    fn dim(&self) -> usize {
        self.data.n_features()
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        let m = self.data.n_samples() as f64;
        let loss: f64 = self.margins(x).into_iter().map(softplus_neg).sum();
        loss / m + 0.5 * self.lambda1 * norm_sq(x)
    }

    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64> {
        let m = self.data.n_samples() as f64;
        let weights: Vec<f64> =
            self.margins(x).into_iter().zip(&self.data.labels).map(|(t, b)| -b * sigmoid_neg(t) / m).collect();
        let mut g = self.data.features.tr_mul_vec(&weights);
        for (gi, xi) in g.iter_mut().zip(x) {
            *gi += self.lambda1 * xi;
        }
        g
    }

    fn linearization_gap(&self, x_prev: &[f64], x_new: &[f64], _grad_prev: &[f64]) -> f64 {
        let m = self.data.n_samples() as f64;
        let step: Vec<f64> = x_new.iter().zip(x_prev).map(|(a, b)| a - b).collect();
        let t = self.margins(x_prev);
        let d = self.margins(&step);
        let loss: f64 = t.iter().zip(&d).map(|(ti, di)| logistic_remainder(*ti, *di)).sum();
        loss / m + 0.5 * self.lambda1 * norm_sq(&step)
    }

    fn known_smoothness(&self) -> Option<f64> {
        Some(self.smoothness)
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        Some(0.0)
    }
}

impl CompositeProblem for LogisticTrimmedL1 {
    fn nonsmooth_value(&self, x: &[f64]) -> f64 {
        self.lambda2 * trimmed_l1_value(x, self.kappa)
    }

    fn prox(&self, y: &[f64], gamma: f64) -> Result<Vec<f64>> {
        trimmed_l1_prox(y, self.lambda2 / gamma, self.kappa)
    }
}

/// Dense Gaussian features with labels `sign(<a_i, w> + noise)` where
/// `w ~ N(0, I/n)` and the noise is standard normal, so the classes overlap.
pub fn synthetic_logistic_dataset(m: usize, n: usize, seed: u64) -> Result<SparseDataset> {
    let mut rng = rng(seed);
    let w: Vec<f64> = gaussian_vec(&mut rng, n).into_iter().map(|v| v / (n as f64).sqrt()).collect();
    let mut rows = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for _ in 0..m {
        let a = gaussian_vec(&mut rng, n);
        let noise = gaussian_vec(&mut rng, 1)[0];
        labels.push(if dot(&a, &w) + noise > 0.0 { 1.0 } else { -1.0 });
        rows.push(a.into_iter().enumerate().collect());
    }
    let mut ds = SparseDataset::new(SparseMatrix::new(n, rows)?, labels)?;
    ds.source = Some(format!("synthetic-logistic(m={m}, n={n}, seed={seed})"));
    Ok(ds)
}
