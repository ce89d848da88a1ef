//! Trimmed l1 penalty `T_kappa(x)`: the sum of the `n - kappa` smallest
//! absolute entries.

use crate::error::{Error, Result};

/// Largest dimension the exhaustive prox accepts.
pub const BRUTEFORCE_MAX_DIM: usize = 20;

pub fn trimmed_l1_value(x: &[f64], kappa: usize) -> f64 {
    let n = x.len();
    if kappa >= n {
        return 0.0;
    }
    let mut mags: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    mags.sort_by(f64::total_cmp);
    mags[..n - kappa].iter().sum()
}

#[inline]
fn soft_threshold(v: f64, weight: f64) -> f64 {
    if v > weight {
        v - weight
    } else if v < -weight {
        v + weight
    } else {
        0.0
    }
}

/// `weight * T_kappa(x) + ||x - y||^2 / 2`.
pub fn trimmed_prox_objective(x: &[f64], y: &[f64], weight: f64, kappa: usize) -> f64 {
    let dist: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    weight * trimmed_l1_value(x, kappa) + 0.5 * dist
}

/// Entry order by `|y_i|` descending, ties by index ascending.
fn magnitude_order(y: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..y.len()).collect();
    idx.sort_by(|&i, &j| y[j].abs().total_cmp(&y[i].abs()).then(i.cmp(&j)));
    idx
}

fn check_args(n: usize, weight: f64, kappa: usize) -> Result<()> {
    if kappa > n {
        return Err(Error::InvalidArgument(format!("kappa = {kappa} exceeds dimension {n}")));
    }
    if !(weight >= 0.0) || !weight.is_finite() {
        return Err(Error::InvalidArgument(format!("prox weight must be finite and >= 0, got {weight}")));
    }
    Ok(())
}

/// `argmin_x { weight * T_kappa(x) + ||x - y||^2 / 2 }`.
///
/// The `kappa` largest entries of `y` (ties to the smaller index) are kept
/// as they are and the rest are soft-thresholded by `weight`.
pub fn trimmed_l1_prox(y: &[f64], weight: f64, kappa: usize) -> Result<Vec<f64>> {
    let n = y.len();
    check_args(n, weight, kappa)?;
    let order = magnitude_order(y);
    let mut x: Vec<f64> = y.iter().map(|&v| soft_threshold(v, weight)).collect();
    for &i in &order[..kappa] {
        x[i] = y[i];
    }

    // The exempt set must still be a top-kappa set of the output.
    let min_exempt = order[..kappa].iter().map(|&i| x[i].abs()).fold(f64::INFINITY, f64::min);
    let max_rest = order[kappa..].iter().map(|&i| x[i].abs()).fold(0.0, f64::max);
    if kappa > 0 && kappa < n && max_rest > min_exempt {
        if n <= BRUTEFORCE_MAX_DIM {
            return trimmed_l1_prox_bruteforce(y, weight, kappa);
        }
        return Err(Error::InvalidArgument("trimmed prox exempt set inconsistent with output".into()));
    }
    Ok(x)
}

/// Exhaustive prox over every exempt set of size `kappa`; ties go to the
/// lexicographically smallest set. Limited to `n <= 20`.
pub fn trimmed_l1_prox_bruteforce(y: &[f64], weight: f64, kappa: usize) -> Result<Vec<f64>> {
    let n = y.len();
    if n > BRUTEFORCE_MAX_DIM {
        return Err(Error::InvalidArgument(format!("brute-force prox limited to n <= {BRUTEFORCE_MAX_DIM}, got {n}")));
    }
    check_args(n, weight, kappa)?;

    let mut best: Option<(f64, Vec<f64>)> = None;
    // Combinations in lexicographic order so the first minimiser wins ties.
    let mut set: Vec<usize> = (0..kappa).collect();
    loop {
        let mut x: Vec<f64> = y.iter().map(|&v| soft_threshold(v, weight)).collect();
        for &i in &set {
            x[i] = y[i];
        }
        // Per-set separable cost, with the penalty charged on the complement.
        let mut cost = 0.0;
        for i in 0..n {
            if !set.contains(&i) {
                cost += weight * x[i].abs() + 0.5 * (x[i] - y[i]).powi(2);
            }
        }
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, x));
        }
        if !next_combination(&mut set, n) {
            break;
        }
    }
    Ok(best.map(|(_, x)| x).unwrap_or_else(|| y.to_vec()))
}

fn next_combination(set: &mut [usize], n: usize) -> bool {
    let k = set.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if set[i] < n - k + i {
            set[i] += 1;
            for j in i + 1..k {
                set[j] = set[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weight_leaves_input() {
        let y = [3.0, -1.0, 0.25];
        assert_eq!(trimmed_l1_prox(&y, 0.0, 1).unwrap(), y.to_vec());
    }

    #[test]
    fn kappa_zero_is_soft_threshold() {
        let y = [3.0, -1.0, 0.25];
        assert_eq!(trimmed_l1_prox(&y, 0.5, 0).unwrap(), vec![2.5, -0.5, 0.0]);
    }

    #[test]
    fn small_worked_example() {
        assert_eq!(trimmed_l1_prox(&[3.0, 1.0, 0.5], 1.0, 1).unwrap(), vec![3.0, 0.0, 0.0]);
        assert_eq!(trimmed_l1_prox_bruteforce(&[3.0, 1.0, 0.5], 1.0, 1).unwrap(), vec![3.0, 0.0, 0.0]);
    }

    #[test]
    fn bruteforce_tie_break_prefers_smallest_exempt_index() {
        assert_eq!(trimmed_l1_prox_bruteforce(&[1.0, 1.0], 2.0, 1).unwrap(), vec![1.0, 0.0]);
        assert_eq!(trimmed_l1_prox(&[1.0, 1.0], 2.0, 1).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn all_exempt_returns_input() {
        let y = [0.3, -2.0, 5.0];
        assert_eq!(trimmed_l1_prox_bruteforce(&y, 4.0, 3).unwrap(), y.to_vec());
        assert_eq!(trimmed_l1_prox(&y, 4.0, 3).unwrap(), y.to_vec());
    }

    #[test]
    fn argument_errors() {
        assert!(trimmed_l1_prox(&[1.0], 1.0, 2).is_err());
        assert!(trimmed_l1_prox(&[1.0], -1.0, 0).is_err());
        assert!(trimmed_l1_prox_bruteforce(&[0.0; 21], 1.0, 1).is_err());
    }

    #[test]
    fn trimmed_value_sums_smallest_entries() {
        assert_eq!(trimmed_l1_value(&[3.0, -1.0, 0.5], 1), 1.5);
        assert_eq!(trimmed_l1_value(&[3.0, 0.0, 0.0], 1), 0.0);
        assert_eq!(trimmed_l1_value(&[3.0, -1.0], 2), 0.0);
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let mut s = vec![0, 1];
        let mut all = vec![s.clone()];
        while next_combination(&mut s, 4) {
            all.push(s.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
