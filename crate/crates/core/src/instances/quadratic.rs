use super::synth::{gaussian_vec, random_orthonormal, rng};
use super::trimmed::{trimmed_l1_prox, trimmed_l1_value};
use crate::error::{Error, Result};
use crate::numerics::vector::{dot, sub};
use crate::numerics::DenseMatrix;
use crate::oracles::{CompositeProblem, SmoothObjective};

/// `f(x) = (x - c)^T Q (x - c) / 2` with `Q` positive semidefinite, plus
/// `g(x) = lambda2 T_kappa(x)`. With `lambda2 = 0` this is a plain quadratic.
#[derive(Clone, Debug)]
pub struct QuadraticTrimmedL1 {
    q: DenseMatrix,
    center: Vec<f64>,
    lambda2: f64,
    kappa: usize,
    smoothness: f64,
}

impl QuadraticTrimmedL1 {
    /// `smoothness` must be an upper bound on the largest eigenvalue of `q`.
    pub fn new(q: DenseMatrix, center: Vec<f64>, lambda2: f64, kappa: usize, smoothness: f64) -> Result<Self> {
        if q.rows() != q.cols() || q.rows() != center.len() {
            return Err(Error::InvalidArgument("quadratic dimensions do not match".into()));
        }
        if kappa > center.len() || lambda2 < 0.0 {
            return Err(Error::InvalidArgument("invalid trimmed-l1 parameters".into()));
        }
        Ok(Self { q, center, lambda2, kappa, smoothness })
    }

    /// Isotropic `f(x) = (L/2) ||x||^2` with `g = 0`.
    pub fn isotropic(n: usize, curvature: f64) -> Self {
        Self {
            q: DenseMatrix::identity(n).scale(curvature),
            center: vec![0.0; n],
            lambda2: 0.0,
            kappa: 0,
            smoothness: curvature,
        }
    }

    /// Random orthogonal eigenbasis with eigenvalues log-spaced from 1 down to
    /// `min_eig`; the centre is standard normal.
    pub fn log_spectrum(n: usize, min_eig: f64, lambda2: f64, kappa: usize, seed: u64) -> Result<Self> {
        let mut rng = rng(seed);
        let u = random_orthonormal(&mut rng, n, n)?;
        let eig: Vec<f64> = (0..n)
            .map(|i| {
                let frac = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                min_eig.powf(frac)
            })
            .collect();
        let q = u.matmul(&DenseMatrix::from_diag(&eig)).matmul(&u.transpose()).sym();
        let center = gaussian_vec(&mut rng, n);
        Self::new(q, center, lambda2, kappa, 1.0)
    }

    pub fn q(&self) -> &DenseMatrix {
        &self.q
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }
}

impl SmoothObjective for QuadraticTrimmedL1 {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        let d = sub(x, &self.center);
        0.5 * dot(&d, &self.q.mul_vec(&d))
    }

    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64> {
        self.q.mul_vec(&sub(x, &self.center))
    }

    fn linearization_gap(&self, x_prev: &[f64], x_new: &[f64], _grad_prev: &[f64]) -> f64 {
        let d = sub(x_new, x_prev);
        0.5 * dot(&d, &self.q.mul_vec(&d))
    }

    fn known_smoothness(&self) -> Option<f64> {
        Some(self.smoothness)
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        Some(0.0)
    }
}

impl CompositeProblem for QuadraticTrimmedL1 {
    fn nonsmooth_value(&self, x: &[f64]) -> f64 {
        if self.lambda2 == 0.0 {
            0.0
        } else {
            self.lambda2 * trimmed_l1_value(x, self.kappa)
        }
    }

    fn prox(&self, y: &[f64], gamma: f64) -> Result<Vec<f64>> {
        if self.lambda2 == 0.0 {
            Ok(y.to_vec())
        } else {
            trimmed_l1_prox(y, self.lambda2 / gamma, self.kappa)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::operator_norm;

    #[test]
    fn log_spectrum_has_unit_top_eigenvalue() {
        let p = QuadraticTrimmedL1::log_spectrum(8, 1e-3, 0.0, 0, 5).unwrap();
        assert!((operator_norm(p.q()).unwrap() - 1.0).abs() < 1e-6);
        assert_eq!(p.smooth_value(p.center()), 0.0);
    }
}
