use super::synth::{gaussian_vec, rng, symmetric_gaussian};
use crate::error::{Error, Result};
use crate::numerics::{operator_norm, DenseMatrix};
use crate::oracles::{RiemannianProblem, Sphere};

/// Rayleigh quotient `f(x) = x^T A x` on the unit sphere.
#[derive(Clone, Debug)]
pub struct SphereRayleigh {
    a: DenseMatrix,
    sphere: Sphere,
    a_norm: f64,
}

impl SphereRayleigh {
    pub fn new(a: DenseMatrix) -> Result<Self> {
        if a.rows() != a.cols() || a.max_abs_diff(&a.transpose()) > 0.0 {
            return Err(Error::InvalidArgument("A must be square and symmetric".into()));
        }
        let sphere = Sphere::new(a.rows())?;
        let a_norm = if a.frobenius_norm() == 0.0 { 0.0 } else { operator_norm(&a)? };
        Ok(Self { a, sphere, a_norm })
    }

    /// `A = A~ + A~^T` with standard-normal `A~`.
    pub fn synthetic(n: usize, seed: u64) -> Result<Self> {
        let mut rng = rng(seed);
        Self::new(symmetric_gaussian(&mut rng, n))
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn random_point(&self, seed: u64) -> DenseMatrix {
        let mut rng = rng(seed);
        loop {
            let v = DenseMatrix::column(&gaussian_vec(&mut rng, self.sphere.n()));
            let nrm = v.frobenius_norm();
            if nrm > 0.0 {
                return v.scale(1.0 / nrm);
            }
        }
    }
}

impl RiemannianProblem for SphereRayleigh {
    type Space = Sphere;

    fn manifold(&self) -> &Sphere {
        &self.sphere
    }

    fn value(&self, x: &DenseMatrix) -> f64 {
        x.inner(&self.a.matmul(x))
    }

    fn euclidean_gradient(&self, x: &DenseMatrix) -> DenseMatrix {
        self.a.matmul(x).scale(2.0)
    }

    /// `6 ||A||`: for tangent `xi` with `t = ||xi||` the normalising retraction
    /// gives `|f(R(xi)) - f(x) - <grad, xi>| <= (2 t^2 + 2 t^3) ||A|| / (1 + t^2) <= 3 ||A|| t^2`.
    fn known_smoothness(&self) -> Option<f64> {
        Some(6.0 * self.a_norm)
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        Some(-self.a_norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::Manifold;

    #[test]
    fn gradient_is_tangent() {
        let p = SphereRayleigh::synthetic(6, 4).unwrap();
        let x = p.random_point(9);
        let g = p.riemannian_gradient(&x);
        assert!(x.inner(&g).abs() < 1e-12 * g.frobenius_norm().max(1.0));
        let ax = p.a().matmul(&x);
        let expected = ax.add_scaled(-x.inner(&ax), &x).scale(2.0);
        assert!(g.max_abs_diff(&expected) < 1e-12);
        assert!(p.manifold().feasibility_error(&x) < 1e-14);
    }

    #[test]
    fn eigenvector_is_stationary() {
        let p = SphereRayleigh::new(DenseMatrix::from_diag(&[0.0, 1.0])).unwrap();
        let g = p.riemannian_gradient(&DenseMatrix::column(&[0.0, 1.0]));
        assert_eq!(g.frobenius_norm(), 0.0);
    }
}
