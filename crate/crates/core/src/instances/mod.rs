//! Concrete problems realising the oracle traits.
//!
//! Synthetic generators take an explicit seed; [`Provenance`] records it with
//! the dimensions and parameters so every trace can name its instance.

mod brockett;
mod holder;
mod logistic;
mod quadratic;
mod quartic;
mod simplex;
mod sphere;
pub mod synth;
mod trimmed;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use brockett::{random_stiefel_point, retraction_curvature_estimate, stiefel_initial_curvature, StiefelBrockett};
pub use holder::HolderToy;
pub use logistic::{logreg_smooth_constant, synthetic_logistic_dataset, LogisticTrimmedL1, RidgeConvention};
pub use quadratic::QuadraticTrimmedL1;
pub use quartic::{quartic_kernel_step, QuarticKernel, RelSmoothQuartic};
pub use simplex::{simplex_lmo, NonconvexQuadraticSimplex};
pub use sphere::SphereRayleigh;
pub use trimmed::{
    trimmed_l1_prox, trimmed_l1_prox_bruteforce, trimmed_l1_value, trimmed_prox_objective, BRUTEFORCE_MAX_DIM,
};

/// Where an instance came from: its id, generator seed, shape and scalar
/// parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub instance: String,
    pub seed: Option<u64>,
    pub dims: Vec<usize>,
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Provenance {
    pub fn new(instance: impl Into<String>, seed: Option<u64>, dims: Vec<usize>) -> Self {
        Self { instance: instance.into(), seed, dims, ..Self::default() }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}
