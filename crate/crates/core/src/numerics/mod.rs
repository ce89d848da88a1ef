//! Linear-algebra primitives shared by every other module.

mod dense;
mod power;
mod qr;
mod scalar;
mod sparse;
pub mod vector;

pub use dense::DenseMatrix;
pub use power::{
    gram_power_iteration, operator_norm, GramPowerIteration, LinearOperator, POWER_MAX_ITER, POWER_REL_TOL,
};
pub use qr::qr_thin;
pub use scalar::solve_cubic_scale;
pub use sparse::SparseMatrix;
pub use vector::DenseVector;
