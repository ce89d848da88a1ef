use crate::error::Result;
use crate::numerics::vector::norm;
use crate::oracles::{CompositeProblem, SmoothObjective};

/// `f(x) = ||x||^{1+nu} / (1+nu)` whose gradient is only `nu`-Holder
/// continuous at the origin; `g` is either zero or the indicator of `[-1, 1]^n`.
#[derive(Clone, Debug)]
pub struct HolderToy {
    nu: f64,
    n: usize,
    boxed: bool,
}

impl HolderToy {
    pub fn new(nu: f64, n: usize, boxed: bool) -> Result<Self> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(crate::Error::InvalidArgument(format!("nu must lie in (0, 1), got {nu}")));
        }
        Ok(Self { nu, n, boxed })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn boxed(&self) -> bool {
        self.boxed
    }
}

impl SmoothObjective for HolderToy {
    fn dim(&self) -> usize {
        self.n
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        norm(x).powf(1.0 + self.nu) / (1.0 + self.nu)
    }

    /// `||x||^{nu-1} x`, and 0 at the origin.
    fn smooth_gradient(&self, x: &[f64]) -> Vec<f64> {
        let r = norm(x);
        if r == 0.0 {
            return vec![0.0; x.len()];
        }
        let s = r.powf(self.nu - 1.0);
        x.iter().map(|v| s * v).collect()
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        Some(0.0)
    }
}

impl CompositeProblem for HolderToy {
    fn nonsmooth_value(&self, x: &[f64]) -> f64 {
        if self.boxed && x.iter().any(|v| v.abs() > 1.0) {
            f64::INFINITY
        } else {
            0.0
        }
    }

    fn prox(&self, y: &[f64], _gamma: f64) -> Result<Vec<f64>> {
        if self.boxed {
            Ok(y.iter().map(|v| v.clamp(-1.0, 1.0)).collect())
        } else {
            Ok(y.to_vec())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_at_origin_is_zero() {
        let h = HolderToy::new(0.5, 3, false).unwrap();
        assert_eq!(h.smooth_gradient(&[0.0; 3]), vec![0.0; 3]);
        assert!(HolderToy::new(1.0, 3, false).is_err());
    }

    #[test]
    fn box_prox_clamps() {
        let h = HolderToy::new(0.5, 2, true).unwrap();
        assert_eq!(h.prox(&[2.0, -0.5], 1.0).unwrap(), vec![1.0, -0.5]);
        assert_eq!(h.nonsmooth_value(&[1.5, 0.0]), f64::INFINITY);
    }
}
