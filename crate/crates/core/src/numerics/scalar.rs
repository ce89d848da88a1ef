use crate::error::{Error, Result};

/// Unique real root `t` in `(0, 1]` of `t (c t^2 + 1) = 1` for `c >= 0`.
///
/// Newton on the convex increasing map `phi(t) = c t^3 + t - 1`, started to
/// the right of the root and kept inside a shrinking bracket; bisection takes
/// over whenever a Newton step leaves the bracket.
pub fn solve_cubic_scale(c: f64) -> Result<f64> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("solve_cubic_scale needs finite c >= 0, got {c}")));
    }
    if c == 0.0 {
        return Ok(1.0);
    }
    let phi = |t: f64| t * (c * t * t + 1.0) - 1.0;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    // phi(c^{-1/3}) = c^{-1/3} > 0, so this start is right of the root.
    let mut t = c.cbrt().recip().min(1.0);
    for _ in 0..200 {
        let f = phi(t);
        if f == 0.0 {
            return Ok(t);
        }
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let newton = t - f / (3.0 * c * t * t + 1.0);
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - t).abs() <= 4.0 * f64::EPSILON * t {
            t = next;
            break;
        }
        t = next;
    }
    // Polish: pick the best of the final iterate and its neighbours.
    let candidates = [t, next_down(t), next_up(t)];
    let best = candidates
        .into_iter()
        .filter(|x| *x > 0.0 && *x <= 1.0)
        .min_by(|a, b| phi(*a).abs().total_cmp(&phi(*b).abs()))
        .unwrap_or(t);
    Ok(best)
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(c: f64, t: f64) -> f64 {
        (t * (c * t * t + 1.0) - 1.0).abs()
    }

    #[test]
    fn linear_case() {
        assert_eq!(solve_cubic_scale(0.0).unwrap(), 1.0);
    }

    #[test]
    fn negative_or_nan_rejected() {
        assert!(solve_cubic_scale(-1.0).is_err());
        assert!(solve_cubic_scale(f64::NAN).is_err());
    }

    #[test]
    fn residuals_are_tiny_across_scales() {
        for c in [1e-12, 1e-3, 0.5, 2.0, 10.0, 1e4, 1e8, 1e15] {
            let t = solve_cubic_scale(c).unwrap();
            assert!(t > 0.0 && t <= 1.0);
            assert!(residual(c, t) <= 1e-14, "c={c} residual={}", residual(c, t));
        }
    }
}
