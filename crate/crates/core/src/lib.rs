//! Auto-conditioned first-order methods.
//!
//! Every method in [`solvers`] picks its stepsize as the running maximum of
//! local curvature estimates measured between consecutive iterates, so it
//! needs neither a Lipschitz constant nor a linesearch. The remaining modules
//! supply the problem oracles, a zoo of concrete instances, post-hoc checks of
//! the convergence guarantees, and LIBSVM/trace I/O.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dataio;
pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod instances;
pub mod numerics;
pub mod oracles;
pub mod solvers;

pub use error::{Error, Result};
