//! Power variations of general index p and the variation/Hall-Wood estimators.
//!
//! The variation statistic at lag l on a series X_{i/n}, i = 0..=n is
//!
//! ```text
//! V_p(l/n) = 1/(2(n-l)) * sum_{i=l..n} |X_{i/n} - X_{(i-l)/n}|^p
//! ```
//!
//! and the estimator of the fractal dimension is 2 - slope/p, where slope is
//! the OLS slope of log V_p(l/n) on log(l/n) over l = 1..L. p = 2 gives the
//! variogram, p = 1 the madogram, p = 1/2 the rodogram.

use serde::{Deserialize, Serialize};

use crate::error::{FdError, Result};
use crate::estimate::{DiagPoint, Estimate};
use crate::fit::{loglog_fit, LogLogPoint};
use crate::series::Series;

/// First or second differences in the variation statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiffOrder {
    First,
    Second,
}

impl DiffOrder {
    pub fn order(self) -> usize {
        match self {
            DiffOrder::First => 1,
            DiffOrder::Second => 2,
        }
    }
}

/// Configuration of a variation estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    /// Power index p > 0.
    pub p: f64,
    /// Number of lags L >= 2 in the log-log regression. L = 2 minimizes bias
    /// and is the default everywhere; larger L is accepted but bias-prone.
    pub lags: usize,
    pub diff_order: DiffOrder,
}

impl VariationConfig {
    pub fn new(p: f64, lags: usize, diff_order: DiffOrder) -> Self {
        Self { p, lags, diff_order }
    }

    pub fn madogram() -> Self {
        Self::new(1.0, 2, DiffOrder::First)
    }

    pub fn variogram() -> Self {
        Self::new(2.0, 2, DiffOrder::First)
    }

    pub fn rodogram() -> Self {
        Self::new(0.5, 2, DiffOrder::First)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.p > 0.0) || !self.p.is_finite() {
            return Err(FdError::InvalidParameters(format!("power index p={} must be > 0", self.p)));
        }
        if self.lags < 2 {
            return Err(FdError::InvalidParameters(format!("need L >= 2 lags, got {}", self.lags)));
        }
        if self.lags * self.diff_order.order() >= n {
            return Err(FdError::LagOutOfRange { lag: self.lags, n });
        }
        Ok(())
    }

    /// Canonical tag: named forms for the standard power indices, explicit
    /// parameters otherwise.
    pub fn method_name(&self) -> String {
        let base = match (self.p, self.diff_order) {
            (p, _) if p == 1.0 => "madogram".to_string(),
            (p, _) if p == 2.0 => "variogram".to_string(),
            (p, _) if p == 0.5 => "rodogram".to_string(),
            (p, _) => format!("variation:p={p}"),
        };
        let mut name = base;
        if self.diff_order == DiffOrder::Second {
            name.push_str(":diff=2");
        }
        if self.lags != 2 {
            name.push_str(&format!(":L={}", self.lags));
        }
        name
    }
}

/// Power variation of order p at lag l (first differences), as displayed:
/// the sum over the n-l+1 lag-l increments divided by 2(n-l).
pub fn power_variation(series: &Series, p: f64, lag: usize) -> Result<f64> {
    let n = series.n();
    if lag == 0 || lag >= n {
        return Err(FdError::LagOutOfRange { lag, n });
    }
    if !(p > 0.0) {
        return Err(FdError::InvalidParameters(format!("power index p={p} must be > 0")));
    }
    let x = series.values();
    let sum: f64 = (lag..=n).map(|i| (x[i] - x[i - lag]).abs().powf(p)).sum();
    Ok(sum / (2.0 * (n - lag) as f64))
}

/// Second-difference power variation at lag l:
/// sum_{i=l..n-l} |X_{(i+l)/n} - 2 X_{i/n} + X_{(i-l)/n}|^p / (2(n-2l)).
pub fn power_variation_second_diff(series: &Series, p: f64, lag: usize) -> Result<f64> {
    let n = series.n();
    if lag == 0 || 2 * lag >= n {
        return Err(FdError::LagOutOfRange { lag, n });
    }
    if !(p > 0.0) {
        return Err(FdError::InvalidParameters(format!("power index p={p} must be > 0")));
    }
    let x = series.values();
    let sum: f64 = (lag..=n - lag)
        .map(|i| (x[i + lag] - 2.0 * x[i] + x[i - lag]).abs().powf(p))
        .sum();
    Ok(sum / (2.0 * (n - 2 * lag) as f64))
}

/// Shifted Hall-Wood area statistic:
/// A^{(j)}(l/n) = (l/n) * sum_{i=1..floor((n-j)/l)} |X_{(il+j)/n} - X_{(il+j-l)/n}|.
///
/// A(l/n) := A^{(0)}(l/n). Averaging the l shifted copies recovers the
/// madogram variation exactly: sum_j A^{(j)}(l/n) = (2l(n-l)/n) * V_1(l/n).
pub fn hallwood_a(series: &Series, lag: usize, offset: usize) -> Result<f64> {
    let n = series.n();
    if lag == 0 || 2 * lag > n {
        return Err(FdError::LagOutOfRange { lag, n });
    }
    if offset >= lag {
        return Err(FdError::InvalidParameters(format!(
            "offset {offset} must lie in 0..{lag}"
        )));
    }
    let x = series.values();
    let count = (n - offset) / lag;
    let sum: f64 = (1..=count)
        .map(|i| (x[i * lag + offset] - x[i * lag + offset - lag]).abs())
        .sum();
    Ok(sum * lag as f64 / n as f64)
}

fn variation_at(series: &Series, cfg: &VariationConfig, lag: usize) -> Result<f64> {
    match cfg.diff_order {
        DiffOrder::First => power_variation(series, cfg.p, lag),
        DiffOrder::Second => power_variation_second_diff(series, cfg.p, lag),
    }
}

/// Variation estimator of order p: fd = 2 - slope/p over lags 1..=L.
pub fn variation_estimate(series: &Series, cfg: &VariationConfig) -> Result<Estimate> {
    let n = series.n();
    cfg.validate(n)?;
    let mut points = Vec::with_capacity(cfg.lags);
    for lag in 1..=cfg.lags {
        let v = variation_at(series, cfg, lag)?;
        if v <= 0.0 {
            return Err(FdError::DegenerateSeries {
                what: format!("variation of order p={} vanishes at lag {lag}", cfg.p),
            });
        }
        points.push(LogLogPoint { s: (lag as f64 / n as f64).ln(), y: v.ln() });
    }
    let fit = loglog_fit(&points)?;
    let fd = 2.0 - fit.slope / cfg.p;
    let diag = fit.points.iter().map(|p| DiagPoint { s: p.s, y: p.y, used: true }).collect();
    Ok(Estimate::from_fit(cfg.method_name(), fd, Some(cfg.p), fit, diag, 1))
}

/// Hall-Wood estimator: fd = 2 - slope of log A(l/n) on log(l/n), l = 1..=L.
pub fn hallwood_estimate(series: &Series, lags: usize) -> Result<Estimate> {
    let n = series.n();
    if lags < 2 {
        return Err(FdError::InvalidParameters(format!("need L >= 2 lags, got {lags}")));
    }
    if n < 2 * lags {
        return Err(FdError::LagOutOfRange { lag: lags, n });
    }
    let mut points = Vec::with_capacity(lags);
    for lag in 1..=lags {
        let a = hallwood_a(series, lag, 0)?;
        if a <= 0.0 {
            return Err(FdError::DegenerateSeries {
                what: format!("Hall-Wood area statistic vanishes at lag {lag}"),
            });
        }
        points.push(LogLogPoint { s: (lag as f64 / n as f64).ln(), y: a.ln() });
    }
    let fit = loglog_fit(&points)?;
    let fd = 2.0 - fit.slope;
    let diag = fit.points.iter().map(|p| DiagPoint { s: p.s, y: p.y, used: true }).collect();
    let name = if lags == 2 { "hallwood".to_string() } else { format!("hallwood:L={lags}") };
    Ok(Estimate::from_fit(name, fd, None, fit, diag, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag() -> Series {
        Series::new(vec![0.0, 1.0, 0.0, 2.0, 0.0]).unwrap()
    }

    fn ramp(n: usize) -> Series {
        Series::new((0..=n).map(|i| i as f64 / n as f64).collect()).unwrap()
    }

    #[test]
    fn power_variation_hand_values() {
        let s = zigzag();
        assert!((power_variation(&s, 1.0, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((power_variation(&s, 1.0, 2).unwrap() - 0.25).abs() < 1e-15);
        assert!((power_variation(&s, 2.0, 1).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert!((power_variation(&s, 2.0, 2).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn power_variation_constant_is_zero() {
        let s = Series::new(vec![3.0; 9]).unwrap();
        for lag in 1..8 {
            assert_eq!(power_variation(&s, 1.7, lag).unwrap(), 0.0);
        }
    }

    #[test]
    fn power_variation_lag_bounds() {
        let s = zigzag();
        assert!(matches!(power_variation(&s, 1.0, 4), Err(FdError::LagOutOfRange { .. })));
        assert!(matches!(power_variation(&s, 1.0, 0), Err(FdError::LagOutOfRange { .. })));
    }

    #[test]
    fn second_diff_kills_affine() {
        let s = Series::new((0..=16).map(|i| 3.0 * i as f64 / 16.0 - 1.0).collect()).unwrap();
        for lag in 1..8 {
            assert_eq!(power_variation_second_diff(&s, 1.0, lag).unwrap(), 0.0);
        }
    }

    #[test]
    fn second_diff_direct_evaluation() {
        // X = (0,1,0,2,0,1), n = 5, p = 1, l = 1: terms |0-2+0|, |2-0+1|, |0-4+0|, |1-0+2|
        let s = Series::new(vec![0.0, 1.0, 0.0, 2.0, 0.0, 1.0]).unwrap();
        let expected = (2.0 + 3.0 + 4.0 + 3.0) / 6.0;
        assert!((power_variation_second_diff(&s, 1.0, 1).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn second_diff_rejects_2l_at_n() {
        // 2l = n leaves a zero divisor in the displayed formula; the contract
        // is LagOutOfRange for 2l >= n.
        let s = Series::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            power_variation_second_diff(&s, 2.0, 1),
            Err(FdError::LagOutOfRange { .. })
        ));
    }

    #[test]
    fn hallwood_a_hand_values() {
        let s = Series::new(vec![0.0, 1.0, 0.0, 2.0, 1.0]).unwrap();
        assert!((hallwood_a(&s, 2, 0).unwrap() - 0.5).abs() < 1e-15);
        assert!((hallwood_a(&s, 2, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!((hallwood_a(&s, 1, 0).unwrap() - 1.25).abs() < 1e-15);
        let c = Series::new(vec![2.0; 8]).unwrap();
        for lag in 1..=4 {
            for j in 0..lag {
                assert_eq!(hallwood_a(&c, lag, j).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn madogram_hand_estimate() {
        let est = variation_estimate(&zigzag(), &VariationConfig::madogram()).unwrap();
        assert!((est.fd - 4.0).abs() < 1e-12);
        assert_eq!(est.method, "madogram");
        assert!(est.warnings.iter().any(|w| w.starts_with("fd_out_of_range")));
    }

    #[test]
    fn variogram_hand_estimate() {
        let est = variation_estimate(&zigzag(), &VariationConfig::variogram()).unwrap();
        let expected = 2.0 - 0.5 * (3.0f64 / 20.0).log2();
        assert!((est.fd - expected).abs() < 1e-12);
        assert!((est.fd - 3.369).abs() < 1e-3);
    }

    #[test]
    fn hallwood_hand_estimate() {
        let s = Series::new(vec![0.0, 1.0, 0.0, 2.0, 1.0]).unwrap();
        let est = hallwood_estimate(&s, 2).unwrap();
        let expected = 2.0 - 0.4f64.log2();
        assert!((est.fd - expected).abs() < 1e-12);
        assert!((est.fd - 3.322).abs() < 1e-3);
        assert!(est.warnings.iter().any(|w| w.starts_with("fd_out_of_range")));
    }

    #[test]
    fn hallwood_ramp_is_exactly_one() {
        for n in [4usize, 64, 1024] {
            let est = hallwood_estimate(&ramp(n), 2).unwrap();
            assert!((est.fd - 1.0).abs() < 1e-12, "n={n} fd={}", est.fd);
            assert!(est.warnings.is_empty());
        }
    }

    #[test]
    fn variation_ramp_matches_closed_form() {
        // Under the displayed normalization the ramp estimate carries the
        // finite-sample count factor (n-1)^2/(n(n-2)); see the module docs.
        for (n, p) in [(4usize, 1.0), (64, 2.0), (1024, 0.5)] {
            let cfg = VariationConfig::new(p, 2, DiffOrder::First);
            let est = variation_estimate(&ramp(n), &cfg).unwrap();
            let nf = n as f64;
            let expected = 1.0 - ((nf - 1.0).powi(2) / (nf * (nf - 2.0))).log2() / p;
            assert!((est.fd - expected).abs() < 1e-10, "n={n} p={p} fd={}", est.fd);
        }
    }

    #[test]
    fn zigzag_lag2_degenerate_for_hallwood() {
        // X = (0,1,0,2,0): lag-2 increments all vanish, so A(2/4) = 0.
        let err = hallwood_estimate(&zigzag(), 2).unwrap_err();
        assert!(matches!(err, FdError::DegenerateSeries { .. }));
    }

    #[test]
    fn madogram_hallwood_identity_exact() {
        let s = Series::new(vec![0.0, 1.0, 0.0, 2.0, 1.0]).unwrap();
        let n = s.n();
        let l = 2usize;
        let sum: f64 = (0..l).map(|j| hallwood_a(&s, l, j).unwrap()).sum();
        let rhs = 2.0 * l as f64 * (n - l) as f64 / n as f64 * power_variation(&s, 1.0, l).unwrap();
        assert!((sum - rhs).abs() < 1e-15);
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn method_names() {
        assert_eq!(VariationConfig::madogram().method_name(), "madogram");
        assert_eq!(VariationConfig::variogram().method_name(), "variogram");
        assert_eq!(VariationConfig::rodogram().method_name(), "rodogram");
        assert_eq!(
            VariationConfig::new(1.5, 3, DiffOrder::Second).method_name(),
            "variation:p=1.5:diff=2:L=3"
        );
        assert_eq!(
            VariationConfig::new(1.0, 2, DiffOrder::Second).method_name(),
            "madogram:diff=2"
        );
    }
}
