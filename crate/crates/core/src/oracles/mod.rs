//! Problem interfaces consumed by the solvers.
//!
//! Nonsmooth terms report `f64::INFINITY` outside their domain; membership in
//! `dom g` is data, not an error.

mod manifold;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::vector::{dot, norm, sub};

pub use manifold::{Manifold, RiemannianProblem, Sphere, Stiefel};

/// The differentiable part `f` shared by every Euclidean problem class.
pub trait SmoothObjective {
    fn dim(&self) -> usize;

    fn smooth_value(&self, x: &[f64]) -> f64;

    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64>;

    /// `f(x_new) - f(x_prev) - <grad f(x_prev), x_new - x_prev>`.
    ///
    /// Instances with a closed form override this to avoid the cancellation
    /// of the direct difference once iterates are close together.
    fn linearization_gap(&self, x_prev: &[f64], x_new: &[f64], grad_prev: &[f64]) -> f64 {
        let step = sub(x_new, x_prev);
        self.smooth_value(x_new) - self.smooth_value(x_prev) - dot(grad_prev, &step)
    }

    /// Upper curvature parameter when it is known in closed form.
    fn known_smoothness(&self) -> Option<f64> {
        None
    }

    /// A certified lower bound on the optimal value, if available.
    fn lower_bound_hint(&self) -> Option<f64> {
        None
    }
}

/// `F = f + g` with a proximal oracle for `g`.
pub trait CompositeProblem: SmoothObjective {
    fn nonsmooth_value(&self, x: &[f64]) -> f64;

    /// One element of `argmin_u { g(u) + (gamma/2) ||u - y||^2 }`.
    fn prox(&self, y: &[f64], gamma: f64) -> Result<Vec<f64>>;

    fn value(&self, x: &[f64]) -> f64 {
        self.smooth_value(x) + self.nonsmooth_value(x)
    }
}

/// `F = f + g` with `g` convex on a bounded domain and a linear-minimisation oracle.
pub trait LmoProblem: SmoothObjective {
    fn nonsmooth_value(&self, x: &[f64]) -> f64;

    /// One element of `argmin_v { <w, v> + g(v) }`.
    fn lmo(&self, w: &[f64]) -> Result<Vec<f64>>;

    /// `sup { ||x - y|| : x, y in dom g }`.
    fn diameter(&self) -> f64;

    fn value(&self, x: &[f64]) -> f64 {
        self.smooth_value(x) + self.nonsmooth_value(x)
    }
}

/// Kernel `h` of a Bregman distance, bundled with the solver of the
/// kernel-step subproblem for the attached nonsmooth term.
pub trait BregmanKernel {
    fn value(&self, x: &[f64]) -> f64;

    fn gradient(&self, x: &[f64]) -> Vec<f64>;

    /// Strong-convexity modulus of `h`.
    fn sigma(&self) -> f64;

    fn in_interior(&self, _x: &[f64]) -> bool {
        true
    }

    /// `D_h(x, y)`. Overridden by kernels with a cancellation-free form.
    fn divergence(&self, x: &[f64], y: &[f64]) -> f64 {
        bregman_divergence(self, x, y)
    }

    /// `argmin_y { <p, y> + gamma D_h(y, x) + g(y) }`.
    fn kernel_step(&self, p: &[f64], x: &[f64], gamma: f64) -> Result<Vec<f64>>;
}

/// `D_h(x, y) = h(x) - h(y) - <grad h(y), x - y>`, or `+inf` when `y` is
/// outside the interior of `dom h`.
pub fn bregman_divergence<K: BregmanKernel + ?Sized>(h: &K, x: &[f64], y: &[f64]) -> f64 {
    if !h.in_interior(y) {
        return f64::INFINITY;
    }
    h.value(x) - h.value(y) - dot(&h.gradient(y), &sub(x, y))
}

/// `h = ||x||^2 / 2` paired with a composite problem's prox: the kernel step
/// becomes `prox_{g/gamma}(x - p / gamma)`.
pub struct EuclideanKernel<'a, P: ?Sized> {
    problem: &'a P,
}

impl<'a, P: CompositeProblem + ?Sized> EuclideanKernel<'a, P> {
    pub fn new(problem: &'a P) -> Self {
        Self { problem }
    }
}

impl<P: CompositeProblem + ?Sized> BregmanKernel for EuclideanKernel<'_, P> {
    fn value(&self, x: &[f64]) -> f64 {
        0.5 * dot(x, x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        x.to_vec()
    }

    fn sigma(&self) -> f64 {
        1.0
    }

    fn divergence(&self, x: &[f64], y: &[f64]) -> f64 {
        0.5 * crate::numerics::vector::dist_sq(x, y)
    }

    fn kernel_step(&self, p: &[f64], x: &[f64], gamma: f64) -> Result<Vec<f64>> {
        let y: Vec<f64> = x.iter().zip(p).map(|(xi, pi)| xi - pi / gamma).collect();
        self.problem.prox(&y, gamma)
    }
}

/// Finite-difference consistency report for a gradient oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientCheckReport {
    pub points: usize,
    pub directions_per_point: usize,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub const GRADIENT_CHECK_STEP: f64 = 1e-6;
pub const GRADIENT_CHECK_TOL: f64 = 1e-4;
pub const GRADIENT_CHECK_DIRECTIONS: usize = 10;

/// Compares central differences of `value` along 10 random unit directions
/// per point with `<gradient, d>`.
///
/// The error is scaled by `max(||gradient||, 1e-8)` so directions nearly
/// orthogonal to the gradient do not blow up the ratio.
pub fn gradient_check<F, G>(value: F, gradient: G, points: &[Vec<f64>], seed: u64) -> GradientCheckReport
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for x in points {
        let g = gradient(x);
        let scale = norm(&g).max(1e-8);
        for _ in 0..GRADIENT_CHECK_DIRECTIONS {
            let mut d: Vec<f64> = (0..x.len()).map(|_| StandardNormal.sample(&mut rng)).collect();
            let dn = norm(&d);
            d.iter_mut().for_each(|v| *v /= dn);
            let h = GRADIENT_CHECK_STEP;
            let plus: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + h * b).collect();
            let minus: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a - h * b).collect();
            let fd = (value(&plus) - value(&minus)) / (2.0 * h);
            let analytic = dot(&g, &d);
            worst = worst.max((fd - analytic).abs() / scale);
        }
    }
    GradientCheckReport {
        points: points.len(),
        directions_per_point: GRADIENT_CHECK_DIRECTIONS,
        max_relative_error: worst,
        tolerance: GRADIENT_CHECK_TOL,
        pass: worst <= GRADIENT_CHECK_TOL,
    }
}
