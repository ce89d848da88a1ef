use super::synth::{gaussian_matrix, random_orthonormal, rng, symmetric_gaussian};
use crate::error::{Error, Result};
use crate::numerics::{operator_norm, DenseMatrix};
use crate::oracles::{Manifold, RiemannianProblem, Stiefel};

/// Brockett cost `f(X) = tr(X^T A X N)` on `St(n, r)` with `N = diag(r, ..., 1)`.
#[derive(Clone, Debug)]
pub struct StiefelBrockett {
    a: DenseMatrix,
    weights: Vec<f64>,
    stiefel: Stiefel,
    a_norm: f64,
}

impl StiefelBrockett {
    pub fn new(a: DenseMatrix, r: usize) -> Result<Self> {
        if a.rows() != a.cols() || a.max_abs_diff(&a.transpose()) > 0.0 {
            return Err(Error::InvalidArgument("A must be square and symmetric".into()));
        }
        let stiefel = Stiefel::new(a.rows(), r)?;
        let weights = (0..r).map(|j| (r - j) as f64).collect();
        let a_norm = if a.frobenius_norm() == 0.0 { 0.0 } else { operator_norm(&a)? };
        Ok(Self { a, weights, stiefel, a_norm })
    }

    /// `A = A~ + A~^T` with standard-normal `A~`.
    pub fn synthetic(n: usize, r: usize, seed: u64) -> Result<Self> {
        let mut rng = rng(seed);
        Self::new(symmetric_gaussian(&mut rng, n), r)
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn scale_columns(&self, m: &DenseMatrix) -> DenseMatrix {
        let (rows, cols) = m.shape();
        let data = m.as_slice().iter().enumerate().map(|(idx, v)| v * self.weights[idx % cols]).collect();
        DenseMatrix::from_row_major(rows, cols, data)
    }
}

/// Q-factor of an `n x r` standard-normal matrix.
pub fn random_stiefel_point(n: usize, r: usize, seed: u64) -> Result<DenseMatrix> {
    random_orthonormal(&mut rng(seed), n, r)
}

impl RiemannianProblem for StiefelBrockett {
    type Space = Stiefel;

    fn manifold(&self) -> &Stiefel {
        &self.stiefel
    }

    fn value(&self, x: &DenseMatrix) -> f64 {
        x.inner(&self.scale_columns(&self.a.matmul(x)))
    }

    /// `2 A X N`.
    fn euclidean_gradient(&self, x: &DenseMatrix) -> DenseMatrix {
        self.scale_columns(&self.a.matmul(x)).scale(2.0)
    }

    /// `-||A|| tr(N)`.
    fn lower_bound_hint(&self) -> Option<f64> {
        Some(-self.a_norm * self.weights.iter().sum::<f64>())
    }
}

/// `2 |f(R_X(Z)) - f(X) - <grad f(X), Z>| / ||Z||^2` for the tangent direction
/// `Z = P_X(Y)` with `Y` standard normal drawn from `seed`.
pub fn retraction_curvature_estimate<P: RiemannianProblem>(problem: &P, x0: &DenseMatrix, seed: u64) -> Result<f64> {
    let m = problem.manifold();
    let (n, r) = m.ambient_shape();
    let mut rng = rng(seed);
    for _ in 0..2 {
        let z = m.project_tangent(x0, &gaussian_matrix(&mut rng, n, r));
        let zz = m.inner(x0, &z, &z);
        if zz > 0.0 {
            let grad = problem.riemannian_gradient(x0);
            let moved = problem.value(&m.retract(x0, &z)?);
            let num = moved - problem.value(x0) - m.inner(x0, &grad, &z);
            return Ok(2.0 * num.abs() / zz);
        }
    }
    Err(Error::InvalidArgument("random tangent direction vanished twice".into()))
}

/// Initial curvature estimate for the Brockett problem at `x0`.
pub fn stiefel_initial_curvature(problem: &StiefelBrockett, x0: &DenseMatrix, seed: u64) -> Result<f64> {
    retraction_curvature_estimate(problem, x0, seed)
}
