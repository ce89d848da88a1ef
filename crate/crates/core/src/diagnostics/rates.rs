use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvers::Trace;

pub const MIN_FIT_LENGTH: usize = 50;

/// Least-squares line through `(x, y)` over the window `k_start..=k_end` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub window: (usize, usize),
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn min_so_far(values: &[f64]) -> Vec<f64> {
    let mut best = f64::INFINITY;
    values
        .iter()
        .map(|&v| {
            best = best.min(v);
            best
        })
        .collect()
}

fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

fn window(values: &[f64], fraction: f64) -> Result<(usize, usize, Vec<f64>)> {
    if values.len() < MIN_FIT_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "rate fit needs at least {MIN_FIT_LENGTH} points, got {}",
            values.len()
        )));
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!("window fraction must lie in (0, 1), got {fraction}")));
    }
    let best = min_so_far(values);
    let k_start = ((fraction * values.len() as f64).ceil() as usize).max(1);
    let k_end = match best.iter().position(|&v| !(v > 0.0)) {
        Some(zero) => zero,
        None => values.len(),
    };
    if k_end < k_start + 1 {
        return Err(Error::InvalidArgument("residual reaches zero before the fit window".into()));
    }
    Ok((k_start, k_end, best))
}

/// Slope of `log min_{l<=k} r_l` against `log k` over `[ceil(fraction K), K]`,
/// truncated before the first zero.
pub fn loglog_fit(residuals: &[f64], fraction: f64) -> Result<RateFit> {
    let (ks, ke, best) = window(residuals, fraction)?;
    let xs: Vec<f64> = (ks..=ke).map(|k| (k as f64).ln()).collect();
    let ys: Vec<f64> = (ks..=ke).map(|k| best[k - 1].ln()).collect();
    let (slope, intercept, r_squared) = line_fit(&xs, &ys);
    Ok(RateFit { window: (ks, ke), slope, intercept, r_squared })
}

pub fn rate_fit(trace: &Trace, fraction: f64) -> Result<RateFit> {
    loglog_fit(&trace.residuals(), fraction)
}

/// Slope of `log min_{l<=k} r_l` against `k`; a negative slope with a good
/// fit indicates a linear rate.
pub fn semilog_fit(residuals: &[f64], fraction: f64) -> Result<RateFit> {
    let (ks, ke, best) = window(residuals, fraction)?;
    let xs: Vec<f64> = (ks..=ke).map(|k| k as f64).collect();
    let ys: Vec<f64> = (ks..=ke).map(|k| best[k - 1].ln()).collect();
    let (slope, intercept, r_squared) = line_fit(&xs, &ys);
    Ok(RateFit { window: (ks, ke), slope, intercept, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_slope() {
        let r: Vec<f64> = (1..=400).map(|k| (k as f64).powf(-0.5)).collect();
        let fit = loglog_fit(&r, 0.5).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-10);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.window, (200, 400));
    }

    #[test]
    fn exact_geometric_decay() {
        let r: Vec<f64> = (1..=100).map(|k| 0.9f64.powi(k)).collect();
        let fit = semilog_fit(&r, 0.5).unwrap();
        assert!((fit.slope - 0.9f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn window_truncates_at_zero() {
        let mut r: Vec<f64> = (1..=100).map(|k| 1.0 / k as f64).collect();
        r[79] = 0.0;
        let fit = loglog_fit(&r, 0.5).unwrap();
        assert_eq!(fit.window, (50, 79));
        assert!((fit.slope + 1.0).abs() < 1e-10);
    }

    #[test]
    fn short_traces_are_rejected() {
        assert!(loglog_fit(&[1.0; 10], 0.5).is_err());
    }
}
