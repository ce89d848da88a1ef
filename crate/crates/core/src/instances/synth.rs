//! Seeded random generators for synthetic instances.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::numerics::{qr_thin, DenseMatrix};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(rng: &mut InstanceRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn gaussian_matrix(rng: &mut InstanceRng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_row_major(rows, cols, gaussian_vec(rng, rows * cols))
}

/// `A~ + A~^T` with standard-normal `A~`.
pub fn symmetric_gaussian(rng: &mut InstanceRng, n: usize) -> DenseMatrix {
    let a = gaussian_matrix(rng, n, n);
    a.add(&a.transpose())
}

/// Q-factor of a standard-normal `n x r` matrix.
pub fn random_orthonormal(rng: &mut InstanceRng, n: usize, r: usize) -> Result<DenseMatrix> {
    loop {
        match qr_thin(&gaussian_matrix(rng, n, r)) {
            Ok((q, _)) => return Ok(q),
            Err(crate::Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}
