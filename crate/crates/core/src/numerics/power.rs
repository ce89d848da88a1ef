use super::vector::{dot, norm};
use super::{DenseMatrix, SparseMatrix};
use crate::error::{Error, Result};

pub const POWER_MAX_ITER: usize = 10_000;
pub const POWER_REL_TOL: f64 = 1e-8;

/// Anything that can apply `A` and `A^T` to a vector.
pub trait LinearOperator {
    fn n_rows(&self) -> usize;
    fn n_cols(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
    fn apply_transpose(&self, y: &[f64]) -> Vec<f64>;

    fn apply_gram(&self, x: &[f64]) -> Vec<f64> {
        self.apply_transpose(&self.apply(x))
    }
}

impl LinearOperator for DenseMatrix {
    fn n_rows(&self) -> usize {
        self.rows()
    }
    fn n_cols(&self) -> usize {
        self.cols()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
    }
    fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        self.tr_mul_vec(y)
    }
}

impl LinearOperator for SparseMatrix {
    fn n_rows(&self) -> usize {
        SparseMatrix::n_rows(self)
    }
    fn n_cols(&self) -> usize {
        SparseMatrix::n_cols(self)
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
    }
    fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        self.tr_mul_vec(y)
    }
}

/// Outcome of power iteration on `A^T A`.
#[derive(Clone, Debug)]
pub struct GramPowerIteration {
    /// Largest eigenvalue estimate of `A^T A` (squared operator norm).
    pub eigenvalue: f64,
    /// Rayleigh quotient after each iteration.
    pub rayleigh_history: Vec<f64>,
}

/// Power iteration on `A^T A` from the normalised all-ones vector.
///
/// Stops when `||A^T A v - lambda v|| <= tol * lambda`. If the all-ones start
/// lies in the null space, the unit vectors are tried in order; a zero
/// operator yields eigenvalue 0.
pub fn gram_power_iteration<A: LinearOperator + ?Sized>(
    a: &A,
    max_iter: usize,
    tol: f64,
) -> Result<GramPowerIteration> {
    let n = a.n_cols();
    if n == 0 {
        return Ok(GramPowerIteration { eigenvalue: 0.0, rayleigh_history: vec![] });
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = a.apply_gram(&v);
    if norm(&w) == 0.0 {
        let start = (0..n).find_map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let w = a.apply_gram(&e);
            (norm(&w) > 0.0).then_some((e, w))
        });
        match start {
            Some((e, we)) => {
                v = e;
                w = we;
            }
            None => return Ok(GramPowerIteration { eigenvalue: 0.0, rayleigh_history: vec![0.0] }),
        }
    }

    let mut history = Vec::new();
    let mut lambda = dot(&v, &w);
    history.push(lambda);
    for _ in 0..max_iter {
        let wn = norm(&w);
        v = w.iter().map(|x| x / wn).collect();
        w = a.apply_gram(&v);
        lambda = dot(&v, &w);
        history.push(lambda);
        let resid: f64 = w.iter().zip(&v).map(|(wi, vi)| (wi - lambda * vi).powi(2)).sum::<f64>().sqrt();
        if resid <= tol * lambda {
            return Ok(GramPowerIteration { eigenvalue: lambda, rayleigh_history: history });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, estimate: lambda.max(0.0).sqrt() })
}

/// Largest singular value `||A||_op`.
pub fn operator_norm<A: LinearOperator + ?Sized>(a: &A) -> Result<f64> {
    gram_power_iteration(a, POWER_MAX_ITER, POWER_REL_TOL).map(|p| p.eigenvalue.max(0.0).sqrt())
}
