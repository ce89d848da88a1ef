use autocond::dataio::{parse_libsvm, read_trace_records, to_libsvm_string, write_trace_records, SparseDataset};
use autocond::instances::{
    trimmed_l1_prox, trimmed_l1_prox_bruteforce, trimmed_prox_objective, QuadraticTrimmedL1, QuarticKernel,
};
use autocond::numerics::{gram_power_iteration, qr_thin, solve_cubic_scale, DenseMatrix, SparseMatrix};
use autocond::oracles::{BregmanKernel, Manifold, Sphere, Stiefel};
use autocond::solvers::{ac_pgm, SolverConfig};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(-3.0..3.0f64, rows * cols).prop_map(move |v| DenseMatrix::from_row_major(rows, cols, v))
}

fn tall_matrix() -> impl Strategy<Value = DenseMatrix> {
    (2usize..9, 1usize..5).prop_filter("tall", |(n, r)| r <= n).prop_flat_map(|(n, r)| matrix(n, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qr_reconstructs_and_is_orthonormal(m in tall_matrix()) {
        if let Ok((q, r)) = qr_thin(&m) {
            let k = m.cols();
            prop_assert!(q.matmul(&r).max_abs_diff(&m) <= 1e-10 * (1.0 + m.frobenius_norm()));
            prop_assert!(q.tr_matmul(&q).max_abs_diff(&DenseMatrix::identity(k)) <= 1e-10);
            for i in 0..k {
                prop_assert!(r.as_slice()[i * k + i] > 0.0);
                for j in 0..i {
                    prop_assert_eq!(r.as_slice()[i * k + j], 0.0);
                }
            }
        }
    }

    #[test]
    fn power_iteration_rayleigh_is_monotone(m in (1usize..7, 1usize..7).prop_flat_map(|(a, b)| matrix(a, b))) {
        let p = gram_power_iteration(&m, 10_000, 1e-10).unwrap();
        for w in p.rayleigh_history.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12 * (1.0 + w[0].abs()));
        }
        prop_assert!(p.eigenvalue <= m.frobenius_norm().powi(2) * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn cubic_root_solves_and_decreases(c1 in 0.0..1e6f64, c2 in 0.0..1e6f64) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let (t_lo, t_hi) = (solve_cubic_scale(lo).unwrap(), solve_cubic_scale(hi).unwrap());
        prop_assert!(t_hi <= t_lo);
        prop_assert!(t_hi > 0.0 && t_lo <= 1.0);
        prop_assert!((t_lo * (lo * t_lo * t_lo + 1.0) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn trimmed_prox_matches_bruteforce(
        y in prop::collection::vec(-5.0..5.0f64, 1..8),
        weight in 0.0..5.0f64,
        kappa_frac in 0.0..=1.0f64,
    ) {
        let kappa = (kappa_frac * y.len() as f64).floor() as usize;
        let fast = trimmed_l1_prox(&y, weight, kappa).unwrap();
        let brute = trimmed_l1_prox_bruteforce(&y, weight, kappa).unwrap();
        let gap = trimmed_prox_objective(&fast, &y, weight, kappa) - trimmed_prox_objective(&brute, &y, weight, kappa);
        prop_assert!(gap.abs() <= 1e-12);
    }

    #[test]
    fn quartic_divergence_dominates_strong_convexity(
        x in prop::collection::vec(-4.0..4.0f64, 3),
        y in prop::collection::vec(-4.0..4.0f64, 3),
        w in 0.0..3.0f64,
    ) {
        let h = QuarticKernel::with_weight(w).unwrap();
        let d = h.divergence(&x, &y);
        let sq: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum();
        prop_assert!(d >= 0.5 * h.sigma() * sq - 1e-12 * (1.0 + d));
    }

    #[test]
    fn stiefel_projection_is_symmetric_and_idempotent(
        raw in matrix(6, 3),
        a in matrix(6, 3),
        b in matrix(6, 3),
    ) {
        let Ok((x, _)) = qr_thin(&raw) else { return Ok(()) };
        let st = Stiefel::new(6, 3).unwrap();
        let (pa, pb) = (st.project_tangent(&x, &a), st.project_tangent(&x, &b));
        prop_assert!((pa.inner(&b) - a.inner(&pb)).abs() <= 1e-10 * (1.0 + a.frobenius_norm() * b.frobenius_norm()));
        prop_assert!(st.project_tangent(&x, &pa).max_abs_diff(&pa) <= 1e-10 * (1.0 + pa.frobenius_norm()));
        prop_assert!(x.tr_matmul(&pa).sym().frobenius_norm() <= 1e-10 * (1.0 + pa.frobenius_norm()));
    }

    #[test]
    fn sphere_retraction_stays_on_sphere(v in prop::collection::vec(-2.0..2.0f64, 4), xi in prop::collection::vec(-2.0..2.0f64, 4)) {
        let n: f64 = v.iter().map(|e| e * e).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let x = DenseMatrix::column(&v.iter().map(|e| e / n).collect::<Vec<_>>());
        let sp = Sphere::new(4).unwrap();
        let t = sp.project_tangent(&x, &DenseMatrix::column(&xi));
        let y = sp.retract(&x, &t).unwrap();
        prop_assert!(sp.feasibility_error(&y) <= 1e-12);
    }

    #[test]
    fn libsvm_round_trip(
        rows in prop::collection::vec(
            (any::<bool>(), prop::collection::btree_map(0usize..12, -1e6..1e6f64, 0..6)),
            1..10,
        )
    ) {
        let labels: Vec<f64> = rows.iter().map(|r| if r.0 { 1.0 } else { -1.0 }).collect();
        let entries: Vec<Vec<(usize, f64)>> = rows
            .iter()
            .map(|r| r.1.iter().filter(|(_, v)| **v != 0.0).map(|(j, v)| (*j, *v)).collect())
            .collect();
        let n_cols = entries.iter().flatten().map(|e| e.0 + 1).max().unwrap_or(0);
        let ds = SparseDataset::new(SparseMatrix::new(n_cols, entries).unwrap(), labels).unwrap();
        let back = parse_libsvm(to_libsvm_string(&ds).as_bytes()).unwrap();
        prop_assert_eq!(back.features, ds.features);
        prop_assert_eq!(back.labels, ds.labels);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_csv_round_trip(seed in 0u64..1000, theta in 0.001..1.0f64) {
        let p = QuadraticTrimmedL1::log_spectrum(8, 1e-2, 0.1, 2, seed).unwrap();
        let t = ac_pgm(&p, &[0.5; 8], &SolverConfig::new(1.1, theta).max_iter(200)).unwrap();
        let mut buf = Vec::new();
        write_trace_records(&t.records, &mut buf).unwrap();
        prop_assert_eq!(read_trace_records(buf.as_slice()).unwrap(), t.records);
    }
}
