use super::synth::{gaussian_matrix, gaussian_vec, rng};
use crate::error::{Error, Result};
use crate::numerics::solve_cubic_scale;
use crate::numerics::vector::{dot, norm_sq, sub};
use crate::numerics::DenseMatrix;
use crate::oracles::{BregmanKernel, CompositeProblem, SmoothObjective};

/// Quartic least squares `f(x) = (1/4) sum_i (<a_i, x>^2 - b_i)^2` with
/// `g = 0`. Not globally Lipschitz-smooth, but smooth relative to
/// `h(x) = ||x||^4/4 + ||x||^2/2`.
#[derive(Clone, Debug)]
pub struct RelSmoothQuartic {
    a: DenseMatrix,
    b: Vec<f64>,
}

impl RelSmoothQuartic {
    pub fn new(a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::InvalidArgument("one target per sensing vector".into()));
        }
        Ok(Self { a, b })
    }

    /// `m` Gaussian sensing vectors with noiseless targets `<a_i, x_true>^2`,
    /// `x_true ~ N(0, I/n)`.
    pub fn synthetic(m: usize, n: usize, seed: u64) -> Result<Self> {
        let mut rng = rng(seed);
        let a = gaussian_matrix(&mut rng, m, n);
        let truth: Vec<f64> = gaussian_vec(&mut rng, n).into_iter().map(|v| v / (n as f64).sqrt()).collect();
        let b = a.mul_vec(&truth).into_iter().map(|v| v * v).collect();
        Self::new(a, b)
    }

    /// Relative-smoothness constant `sum_i 3 ||a_i||^4 + ||a_i||^2 |b_i|`
    /// for the kernel `||x||^4/4 + ||x||^2/2`.
    pub fn relative_smoothness(&self) -> f64 {
        (0..self.a.rows())
            .map(|i| {
                let s = norm_sq(self.a.row(i));
                3.0 * s * s + s * self.b[i].abs()
            })
            .sum()
    }

    pub fn kernel(&self) -> QuarticKernel {
        QuarticKernel::default()
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }
}

impl SmoothObjective for RelSmoothQuartic {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        self.a.mul_vec(x).iter().zip(&self.b).map(|(ax, b)| (ax * ax - b).powi(2)).sum::<f64>() / 4.0
    }

    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64> {
        let w: Vec<f64> = self.a.mul_vec(x).iter().zip(&self.b).map(|(ax, b)| (ax * ax - b) * ax).collect();
        self.a.tr_mul_vec(&w)
    }

    /// Relative-smoothness constant (w.r.t. [`QuarticKernel`]), not a
    /// Euclidean Lipschitz constant.
    fn known_smoothness(&self) -> Option<f64> {
        Some(self.relative_smoothness())
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        Some(0.0)
    }
}

impl CompositeProblem for RelSmoothQuartic {
    fn nonsmooth_value(&self, _x: &[f64]) -> f64 {
        0.0
    }

    fn prox(&self, y: &[f64], _gamma: f64) -> Result<Vec<f64>> {
        Ok(y.to_vec())
    }
}

/// `h(x) = (w/4) ||x||^4 + ||x||^2 / 2` with `g = 0`; `w = 1` by default and
/// `w = 0` degenerates to the Euclidean kernel.
#[derive(Clone, Copy, Debug)]
pub struct QuarticKernel {
    quartic_weight: f64,
}

impl Default for QuarticKernel {
    fn default() -> Self {
        Self { quartic_weight: 1.0 }
    }
}

impl QuarticKernel {
    pub fn with_weight(quartic_weight: f64) -> Result<Self> {
        if !(quartic_weight >= 0.0) {
            return Err(Error::InvalidArgument("quartic weight must be >= 0".into()));
        }
        Ok(Self { quartic_weight })
    }
}

impl BregmanKernel for QuarticKernel {
    fn value(&self, x: &[f64]) -> f64 {
        let s = norm_sq(x);
        0.25 * self.quartic_weight * s * s + 0.5 * s
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let c = self.quartic_weight * norm_sq(x) + 1.0;
        x.iter().map(|v| c * v).collect()
    }

    fn sigma(&self) -> f64 {
        1.0
    }

    /// Expanded around `y` with `delta = x - y`, `s = <y, delta>`:
    /// `||delta||^2/2 + (w/4) (4 s^2 + 2 s ||delta||^2 + ||delta||^2 (||x||^2 + ||y||^2))`.
    fn divergence(&self, x: &[f64], y: &[f64]) -> f64 {
        let delta = sub(x, y);
        let dd = norm_sq(&delta);
        let s = dot(y, &delta);
        let quartic = 4.0 * s * s + 2.0 * s * dd + dd * (norm_sq(x) + norm_sq(y));
        0.5 * dd + 0.25 * self.quartic_weight * quartic
    }

    fn kernel_step(&self, p: &[f64], x: &[f64], gamma: f64) -> Result<Vec<f64>> {
        quartic_kernel_step_weighted(self.quartic_weight, p, x, gamma)
    }
}

/// Minimiser of `<p, y> + gamma D_h(y, x)` for `h = ||.||^4/4 + ||.||^2/2`:
/// solves `grad h(y) = grad h(x) - p / gamma`.
pub fn quartic_kernel_step(p: &[f64], x: &[f64], gamma: f64) -> Result<Vec<f64>> {
    quartic_kernel_step_weighted(1.0, p, x, gamma)
}

fn quartic_kernel_step_weighted(w: f64, p: &[f64], x: &[f64], gamma: f64) -> Result<Vec<f64>> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidArgument(format!("kernel step needs gamma > 0, got {gamma}")));
    }
    let c = w * norm_sq(x) + 1.0;
    let d: Vec<f64> = x.iter().zip(p).map(|(xi, pi)| c * xi - pi / gamma).collect();
    let t = solve_cubic_scale(w * norm_sq(&d))?;
    Ok(d.into_iter().map(|v| t * v).collect())
}
