use autocond::instances::synth::{gaussian_matrix, rng};
use autocond::instances::{simplex_lmo, HolderToy};
use autocond::numerics::{operator_norm, qr_thin, DenseMatrix};
use autocond::oracles::SmoothObjective;
use nalgebra::DMatrix;

fn to_nalgebra(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

#[test]
fn operator_norm_matches_svd() {
    for seed in 0..20 {
        let a = gaussian_matrix(&mut rng(seed), 10, 6);
        let reference = to_nalgebra(&a).singular_values().max();
        let ours = operator_norm(&a).unwrap();
        assert!((ours - reference).abs() <= 1e-6 * reference, "seed {seed}: {ours} vs {reference}");
    }
}

#[test]
fn thin_qr_spans_same_columns_as_nalgebra() {
    for seed in 0..10 {
        let a = gaussian_matrix(&mut rng(seed), 12, 4);
        let (q, _) = qr_thin(&a).unwrap();
        let qn = to_nalgebra(&a).qr().q();
        let ours = to_nalgebra(&q);
        let proj_a = &ours * ours.transpose();
        let proj_b = &qn * qn.transpose();
        assert!((proj_a - proj_b).abs().max() < 1e-10);
    }
}

#[test]
fn simplex_lmo_minimises_over_vertices() {
    let w = [0.3, -1.2, 0.7, -1.2, 5.0];
    let v = simplex_lmo(&w);
    assert_eq!(v, vec![0.0, 1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn holder_gradient_is_holder_with_its_exponent() {
    let nu = 0.5;
    let p = HolderToy::new(nu, 3, false).unwrap();
    let x = [0.2, -0.1, 0.05];
    let mut worst: f64 = 0.0;
    for e in [1e-1, 1e-2, 1e-3, 1e-4] {
        let y: Vec<f64> = x.iter().map(|v| v + e).collect();
        let (gx, gy) = (p.smooth_gradient(&x), p.smooth_gradient(&y));
        let dg: f64 = gx.iter().zip(&gy).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let dx = (3.0f64).sqrt() * e;
        worst = worst.max(dg / dx.powf(nu));
    }
    assert!(worst.is_finite() && worst < 10.0);
}
