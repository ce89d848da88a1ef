use super::synth::{gaussian_vec, rng, symmetric_gaussian};
use crate::error::{Error, Result};
use crate::numerics::vector::dot;
use crate::numerics::{operator_norm, DenseMatrix};
use crate::oracles::{LmoProblem, SmoothObjective};

/// Vertex `e_i` with `i` the smallest index attaining `min_j w_j`.
pub fn simplex_lmo(w: &[f64]) -> Vec<f64> {
    let mut best = 0;
    for (i, &v) in w.iter().enumerate().skip(1) {
        if v < w[best] {
            best = i;
        }
    }
    let mut e = vec![0.0; w.len()];
    if !e.is_empty() {
        e[best] = 1.0;
    }
    e
}

fn in_simplex(x: &[f64]) -> bool {
    let tol = 1e-12 * x.len().max(1) as f64;
    x.iter().all(|&v| v >= -tol) && (x.iter().sum::<f64>() - 1.0).abs() <= tol
}

/// `f(x) = x^T Q x / 2 + c^T x` with indefinite symmetric `Q`, constrained to
/// the unit simplex.
#[derive(Clone, Debug)]
pub struct NonconvexQuadraticSimplex {
    q: DenseMatrix,
    c: Vec<f64>,
    q_norm: f64,
}

impl NonconvexQuadraticSimplex {
    pub fn new(q: DenseMatrix, c: Vec<f64>) -> Result<Self> {
        if q.rows() != q.cols() || q.rows() != c.len() || c.is_empty() {
            return Err(Error::InvalidArgument("simplex quadratic dimensions do not match".into()));
        }
        if q.max_abs_diff(&q.transpose()) > 0.0 {
            return Err(Error::InvalidArgument("Q must be symmetric".into()));
        }
        let q_norm = operator_norm(&q)?;
        Ok(Self { q, c, q_norm })
    }

    /// `Q = (A~ + A~^T) / 2`, `c` standard normal.
    pub fn synthetic(n: usize, seed: u64) -> Result<Self> {
        let mut rng = rng(seed);
        let q = symmetric_gaussian(&mut rng, n).scale(0.5);
        let c = gaussian_vec(&mut rng, n);
        Self::new(q, c)
    }

    pub fn q(&self) -> &DenseMatrix {
        &self.q
    }

    pub fn linear_term(&self) -> &[f64] {
        &self.c
    }

    /// Barycentre of the simplex.
    pub fn barycenter(&self) -> Vec<f64> {
        vec![1.0 / self.c.len() as f64; self.c.len()]
    }
}

impl SmoothObjective for NonconvexQuadraticSimplex {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        0.5 * dot(x, &self.q.mul_vec(x)) + dot(&self.c, x)
    }

    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = self.q.mul_vec(x);
        g.iter_mut().zip(&self.c).for_each(|(a, b)| *a += b);
        g
    }

    fn linearization_gap(&self, x_prev: &[f64], x_new: &[f64], _grad_prev: &[f64]) -> f64 {
        let d: Vec<f64> = x_new.iter().zip(x_prev).map(|(a, b)| a - b).collect();
        0.5 * dot(&d, &self.q.mul_vec(&d))
    }

    fn known_smoothness(&self) -> Option<f64> {
        Some(self.q_norm)
    }

    /// `min_i c_i - ||Q|| / 2`, valid since `||x|| <= 1` on the simplex.
    fn lower_bound_hint(&self) -> Option<f64> {
        let cmin = self.c.iter().copied().fold(f64::INFINITY, f64::min);
        Some(cmin - 0.5 * self.q_norm)
    }
}

impl LmoProblem for NonconvexQuadraticSimplex {
    fn nonsmooth_value(&self, x: &[f64]) -> f64 {
        if in_simplex(x) {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn lmo(&self, w: &[f64]) -> Result<Vec<f64>> {
        if !crate::numerics::vector::all_finite(w) {
            return Err(Error::InvalidArgument("linear minimisation with non-finite weights".into()));
        }
        Ok(simplex_lmo(w))
    }

    fn diameter(&self) -> f64 {
        std::f64::consts::SQRT_2
    }
}
