use crate::error::{Error, Result};
use crate::numerics::{qr_thin, DenseMatrix};

/// Embedded Riemannian submanifold of `R^{n x r}` with the Euclidean metric.
pub trait Manifold {
    /// Shape of ambient-space points.
    fn ambient_shape(&self) -> (usize, usize);

    fn project_tangent(&self, x: &DenseMatrix, y: &DenseMatrix) -> DenseMatrix;

    fn retract(&self, x: &DenseMatrix, xi: &DenseMatrix) -> Result<DenseMatrix>;

    fn inner(&self, _x: &DenseMatrix, a: &DenseMatrix, b: &DenseMatrix) -> f64 {
        a.inner(b)
    }

    fn norm(&self, x: &DenseMatrix, a: &DenseMatrix) -> f64 {
        self.inner(x, a, a).sqrt()
    }

    /// For an embedded submanifold with the induced metric this is the
    /// tangent projection of the Euclidean gradient.
    fn riemannian_gradient(&self, x: &DenseMatrix, euclidean_gradient: &DenseMatrix) -> DenseMatrix {
        self.project_tangent(x, euclidean_gradient)
    }

    /// Distance of `x` from the manifold constraint, for validation.
    fn feasibility_error(&self, x: &DenseMatrix) -> f64;
}

/// Smooth objective restricted to a manifold.
pub trait RiemannianProblem {
    type Space: Manifold;

    fn manifold(&self) -> &Self::Space;

    fn value(&self, x: &DenseMatrix) -> f64;

    fn euclidean_gradient(&self, x: &DenseMatrix) -> DenseMatrix;

    fn riemannian_gradient(&self, x: &DenseMatrix) -> DenseMatrix {
        self.manifold().riemannian_gradient(x, &self.euclidean_gradient(x))
    }

    /// Retraction-smoothness constant when one is known.
    fn known_smoothness(&self) -> Option<f64> {
        None
    }

    fn lower_bound_hint(&self) -> Option<f64> {
        None
    }
}

fn is_zero(m: &DenseMatrix) -> bool {
    m.as_slice().iter().all(|&v| v == 0.0)
}

/// Stiefel manifold `St(n, r) = { X : X^T X = I_r }` with the QR retraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stiefel {
    n: usize,
    r: usize,
}

impl Stiefel {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || n < r {
            return Err(Error::InvalidArgument(format!("St({n}, {r}) needs 0 < r <= n")));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `n r - r (r + 1) / 2`.
    pub fn dimension(&self) -> usize {
        self.n * self.r - self.r * (self.r + 1) / 2
    }
}

impl Manifold for Stiefel {
    fn ambient_shape(&self) -> (usize, usize) {
        (self.n, self.r)
    }

    /// `Y - X sym(X^T Y)`.
    fn project_tangent(&self, x: &DenseMatrix, y: &DenseMatrix) -> DenseMatrix {
        let xty = x.tr_matmul(y).sym();
        y.sub(&x.matmul(&xty))
    }

    /// Q-factor of `X + xi` (positive-diagonal convention); `R_X(0) = X` exactly.
    fn retract(&self, x: &DenseMatrix, xi: &DenseMatrix) -> Result<DenseMatrix> {
        if is_zero(xi) {
            return Ok(x.clone());
        }
        qr_thin(&x.add(xi)).map(|(q, _)| q)
    }

    fn feasibility_error(&self, x: &DenseMatrix) -> f64 {
        x.tr_matmul(x).max_abs_diff(&DenseMatrix::identity(self.r))
    }
}

/// Unit sphere `S^{n-1}` stored as `n x 1` columns; retraction normalises `x + xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sphere {
    n: usize,
}

impl Sphere {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("sphere dimension must be positive".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Manifold for Sphere {
    fn ambient_shape(&self) -> (usize, usize) {
        (self.n, 1)
    }

    fn project_tangent(&self, x: &DenseMatrix, y: &DenseMatrix) -> DenseMatrix {
        y.add_scaled(-x.inner(y), x)
    }

    fn retract(&self, x: &DenseMatrix, xi: &DenseMatrix) -> Result<DenseMatrix> {
        if is_zero(xi) {
            return Ok(x.clone());
        }
        let p = x.add(xi);
        let nrm = p.frobenius_norm();
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::RankDeficient { index: 0, value: nrm });
        }
        Ok(p.scale(1.0 / nrm))
    }

    fn feasibility_error(&self, x: &DenseMatrix) -> f64 {
        (x.inner(x) - 1.0).abs()
    }
}
