use super::DenseMatrix;
use crate::error::{Error, Result};

/// Thin Householder QR of an `n x r` matrix with `n >= r`.
///
/// The returned `R` has a strictly positive diagonal, which makes the Q-factor
/// unique. A column is declared dependent when `|R_ii| < 1e-12 * ||M||_F`.
pub fn qr_thin(m: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let (n, r) = m.shape();
    if n < r {
        return Err(Error::InvalidArgument(format!("qr_thin needs rows >= cols, got {n}x{r}")));
    }
    let scale = m.frobenius_norm();
    let threshold = 1e-12 * scale;

    let mut a = m.clone();
    // Householder vectors, one per column, stored with their leading offset.
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(r);
    for j in 0..r {
        let mut v: Vec<f64> = (j..n).map(|i| a[(i, j)]).collect();
        let alpha = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if alpha <= threshold || alpha == 0.0 {
            return Err(Error::RankDeficient { index: j, value: alpha });
        }
        // Reflect x onto -sign(x0) * alpha * e1 to avoid cancellation.
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        for c in j..r {
            let proj: f64 = (j..n).map(|i| v[i - j] * a[(i, c)]).sum::<f64>() * 2.0 / vnorm_sq;
            for i in j..n {
                a[(i, c)] -= proj * v[i - j];
            }
        }
        reflectors.push(v);
    }

    let mut rmat = DenseMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            rmat[(i, j)] = a[(i, j)];
        }
    }

    // Accumulate Q = H_0 H_1 ... H_{r-1} applied to the first r columns of I.
    let mut q = DenseMatrix::eye(n, r);
    for (j, v) in reflectors.iter().enumerate().rev() {
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        for c in 0..r {
            let proj: f64 = (j..n).map(|i| v[i - j] * q[(i, c)]).sum::<f64>() * 2.0 / vnorm_sq;
            if proj != 0.0 {
                for i in j..n {
                    q[(i, c)] -= proj * v[i - j];
                }
            }
        }
    }

    // Sign convention: flip rows of R / columns of Q so that diag(R) > 0.
    for i in 0..r {
        if rmat[(i, i)] < 0.0 {
            for j in i..r {
                rmat[(i, j)] = -rmat[(i, j)];
            }
            for row in 0..n {
                q[(row, i)] = -q[(row, i)];
            }
        }
        if rmat[(i, i)].abs() < threshold {
            return Err(Error::RankDeficient { index: i, value: rmat[(i, i)] });
        }
    }
    Ok((q, rmat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_slice_is_its_own_q() {
        let m = DenseMatrix::eye(3, 2);
        let (q, r) = qr_thin(&m).unwrap();
        assert!(q.max_abs_diff(&m) < 1e-15);
        assert!(r.max_abs_diff(&DenseMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn diagonal_case() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0], vec![0.0, 0.0]]);
        let (q, r) = qr_thin(&m).unwrap();
        assert!(q.max_abs_diff(&DenseMatrix::eye(3, 2)) < 1e-15);
        assert!(r.max_abs_diff(&DenseMatrix::from_diag(&[2.0, 3.0])) < 1e-15);
    }

    #[test]
    fn negative_diagonal_is_flipped() {
        let m = DenseMatrix::from_rows(&[vec![-2.0, 1.0], vec![0.0, -3.0]]);
        let (q, r) = qr_thin(&m).unwrap();
        assert!(r[(0, 0)] > 0.0 && r[(1, 1)] > 0.0);
        assert!(q.matmul(&r).max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn rank_deficiency_is_an_error() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]]);
        assert!(matches!(qr_thin(&m), Err(Error::RankDeficient { index: 1, .. })));
        assert!(qr_thin(&DenseMatrix::zeros(3, 2)).is_err());
        assert!(qr_thin(&DenseMatrix::zeros(2, 3)).is_err());
    }
}
