//! Ordinary and weighted least squares on log-log axes — the regression
//! substrate every estimator reduces to.

use serde::{Deserialize, Serialize};

use crate::error::{FdError, Result};

/// One (log scale, log statistic) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogPoint {
    /// Log of the scale: log(l/n), log omega, or log tau.
    pub s: f64,
    /// Log of the statistic at that scale.
    pub y: f64,
}

/// Fitted line through log-log points; intercept is the fitted y at s = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// The points used in the fit, sorted by (s, y).
    pub points: Vec<LogLogPoint>,
}

/// OLS fit of y on s: slope = sum (s-s̄)(y-ȳ) / sum (s-s̄)².
///
/// Points are sorted before accumulation so the result does not depend on
/// input order; exact (line through both) in the 2-point case.
pub fn loglog_fit(points: &[LogLogPoint]) -> Result<FitResult> {
    let weights = vec![1.0; points.len()];
    weighted_loglog_fit(points, &weights)
}

/// Weighted least squares with the same contract as [`loglog_fit`].
pub fn weighted_loglog_fit(points: &[LogLogPoint], weights: &[f64]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(FdError::DegenerateRegression);
    }
    assert_eq!(points.len(), weights.len(), "one weight per point");
    if points.iter().any(|p| !p.s.is_finite() || !p.y.is_finite()) {
        return Err(FdError::DegenerateRegression);
    }
    if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
        return Err(FdError::InvalidParameters("fit weights must be positive and finite".into()));
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        (points[a].s, points[a].y)
            .partial_cmp(&(points[b].s, points[b].y))
            .expect("finite coordinates")
    });
    let pts: Vec<LogLogPoint> = order.iter().map(|&i| points[i]).collect();
    let w: Vec<f64> = order.iter().map(|&i| weights[i]).collect();

    if !pts.windows(2).any(|p| p[0].s != p[1].s) {
        return Err(FdError::DegenerateRegression);
    }

    let wsum: f64 = w.iter().sum();
    let s_mean = pts.iter().zip(&w).map(|(p, w)| w * p.s).sum::<f64>() / wsum;
    let y_mean = pts.iter().zip(&w).map(|(p, w)| w * p.y).sum::<f64>() / wsum;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (p, w) in pts.iter().zip(&w) {
        sxy += w * (p.s - s_mean) * (p.y - y_mean);
        sxx += w * (p.s - s_mean) * (p.s - s_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * s_mean;
    Ok(FitResult { slope, intercept, points: pts })
}
