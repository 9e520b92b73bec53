//! Frequency-domain estimators: the cosine semi-periodogram and its DCT-II
//! variant.
//!
//! With n_s = 2m+1 samples X_{i/(2m)},
//!
//! ```text
//! B(w) = (1/m) [ (X_0 + X_1)/2 + sum_{i=1..2m-1} X_{i/(2m)} cos(w (i-m)/m) ]
//! Bt(w) = sqrt(2/(2m+1)) sum_{i=0..2m} X_{i/(2m)} cos(w (2i+1)/(4m))
//! ```
//!
//! J = B^2 is regressed on the frequencies w_l = 2*pi*l, l = 1..L with
//! L = floor(min(m/2, n_s^(2/3))); the DCT-II uses w_l = 2*pi*l*m/(2m+1) and
//! L = floor(min(2m, 4 n_s^(2/3))), about four times more points. Either way
//! fd = 5/2 + slope/2.
//!
//! Both transforms are evaluated on the mean-centered series. At the
//! regression frequencies this changes nothing algebraically (the shift
//! contributions of the leading term and of the cosine sum cancel for B, and
//! the DCT-II AC basis is orthogonal to constants), but it makes constant
//! input produce exactly zero power, so degeneracy detection is exact.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{FdError, Result};
use crate::estimate::{DiagPoint, Estimate};
use crate::fit::{loglog_fit, LogLogPoint};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodogramKind {
    Semi,
    Dct2,
}

/// How the displayed leading term of B is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointRule {
    /// (X_0 + X_1)/2, exactly as displayed.
    #[default]
    AsPrinted,
    /// (X_0 + X_{2m})/2, the trapezoidal endpoint pairing.
    Trapezoid,
}

/// Squared cosine transform values at the regression frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodogramTable {
    pub kind: PeriodogramKind,
    /// Half-length parameter: the series used has n_s = 2m + 1 samples.
    pub m: usize,
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
}

/// Center the series and resolve parity: even-length input drops the final
/// sample (the deterministic rule, recorded as a warning).
fn prepare(series: &Series) -> Result<(Vec<f64>, usize, Option<String>)> {
    let mut values = series.values().to_vec();
    let mut warning = None;
    if values.len() % 2 == 0 {
        values.pop();
        warning = Some("dropped_last_sample: even length reduced to n_s = 2m + 1".to_string());
    }
    let m = (values.len() - 1) / 2;
    if m < 4 {
        return Err(FdError::SeriesTooShort { required: 9, actual: series.len() });
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    for v in &mut values {
        *v -= mean;
    }
    Ok((values, m, warning))
}

fn semi_b(x: &[f64], m: usize, omega: f64, rule: EndpointRule) -> f64 {
    let lead = match rule {
        EndpointRule::AsPrinted => 0.5 * (x[0] + x[1]),
        EndpointRule::Trapezoid => 0.5 * (x[0] + x[2 * m]),
    };
    let mut sum = lead;
    for i in 1..2 * m {
        sum += x[i] * (omega * (i as f64 - m as f64) / m as f64).cos();
    }
    sum / m as f64
}

fn dct2_b(x: &[f64], m: usize, omega: f64) -> f64 {
    let norm = (2.0 / (2.0 * m as f64 + 1.0)).sqrt();
    let mut sum = 0.0;
    for (i, &v) in x.iter().enumerate().take(2 * m + 1) {
        sum += v * (omega * (2.0 * i as f64 + 1.0) / (4.0 * m as f64)).cos();
    }
    norm * sum
}

/// Number of regression frequencies for the semi-periodogram.
pub fn semi_frequency_count(m: usize) -> usize {
    let ns = 2 * m as f64 + 1.0;
    (0.5 * m as f64).min(ns.powf(2.0 / 3.0)).floor() as usize
}

/// Number of regression frequencies for the DCT-II periodogram.
pub fn dct2_frequency_count(m: usize) -> usize {
    let ns = 2 * m as f64 + 1.0;
    (2.0 * m as f64).min(4.0 * ns.powf(2.0 / 3.0)).floor() as usize
}

/// Semi-periodogram B at an arbitrary frequency (centered series).
pub fn semi_b_at(series: &Series, omega: f64, rule: EndpointRule) -> Result<f64> {
    let (x, m, _) = prepare(series)?;
    Ok(semi_b(&x, m, omega, rule))
}

/// DCT-II transform B at an arbitrary frequency (centered series).
pub fn dct2_b_at(series: &Series, omega: f64) -> Result<f64> {
    let (x, m, _) = prepare(series)?;
    Ok(dct2_b(&x, m, omega))
}

pub fn semiperiodogram(series: &Series) -> Result<PeriodogramTable> {
    semiperiodogram_with(series, EndpointRule::default()).map(|(t, _)| t)
}

pub fn semiperiodogram_with(
    series: &Series,
    rule: EndpointRule,
) -> Result<(PeriodogramTable, Option<String>)> {
    let (x, m, warning) = prepare(series)?;
    let count = semi_frequency_count(m);
    let mut frequencies = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for l in 1..=count {
        let omega = 2.0 * PI * l as f64;
        let b = semi_b(&x, m, omega, rule);
        frequencies.push(omega);
        values.push(b * b);
    }
    Ok((PeriodogramTable { kind: PeriodogramKind::Semi, m, frequencies, values }, warning))
}

pub fn dct2_periodogram(series: &Series) -> Result<PeriodogramTable> {
    dct2_periodogram_with(series).map(|(t, _)| t)
}

fn dct2_periodogram_with(series: &Series) -> Result<(PeriodogramTable, Option<String>)> {
    let (x, m, warning) = prepare(series)?;
    let count = dct2_frequency_count(m);
    let denom = 2.0 * m as f64 + 1.0;
    let mut frequencies = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for l in 1..=count {
        let omega = 2.0 * PI * l as f64 * m as f64 / denom;
        let b = dct2_b(&x, m, omega);
        frequencies.push(omega);
        values.push(b * b);
    }
    Ok((PeriodogramTable { kind: PeriodogramKind::Dct2, m, frequencies, values }, warning))
}

fn spectral_estimate(table: &PeriodogramTable, warning: Option<String>, name: &str) -> Result<Estimate> {
    // Zero ordinates have no log; they are dropped from the fit (and cannot
    // appear in the diagnostics either).
    let fit_points: Vec<LogLogPoint> = table
        .frequencies
        .iter()
        .zip(&table.values)
        .filter(|(_, &j)| j > 0.0)
        .map(|(&omega, &j)| LogLogPoint { s: omega.ln(), y: j.ln() })
        .collect();
    if fit_points.len() < 2 {
        return Err(FdError::DegenerateSeries {
            what: format!("{name}: fewer than 2 positive periodogram ordinates"),
        });
    }
    let diag = fit_points.iter().map(|p| DiagPoint { s: p.s, y: p.y, used: true }).collect();
    let fd = 2.5 + 0.5 * fit.slope;
    let mut est = Estimate::from_fit(name.to_string(), fd, None, fit, diag, 1);
    if let Some(w) = warning {
        est.warnings.push(w);
    }
    Ok(est)
}

/// Semi-periodogram estimator: fd = 5/2 + slope/2.
pub fn semiperiodogram_estimate(series: &Series) -> Result<Estimate> {
    let (table, warning) = semiperiodogram_with(series, EndpointRule::default())?;
    spectral_estimate(&table, warning, "periodogram")
}

/// DCT-II estimator: same regression shape, four times as many frequencies.
pub fn dct2_estimate(series: &Series) -> Result<Estimate> {
    let (table, warning) = dct2_periodogram_with(series)?;
    spectral_estimate(&table, warning, "dct2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_series(n_s: usize, seed: u64) -> Series {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        Series::new((0..n_s).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn frequency_counts_match_reference_sizes() {
        // n_s = 1025 -> m = 512: semi uses 101 points, the DCT-II 406.
        assert_eq!(semi_frequency_count(512), 101);
        assert_eq!(dct2_frequency_count(512), 406);
    }

    #[test]
    fn constant_series_is_exactly_degenerate() {
        let s = Series::new(vec![5.5; 33]).unwrap();
        let (table, _) = semiperiodogram_with(&s, EndpointRule::AsPrinted).unwrap();
        assert!(table.values.iter().all(|&v| v == 0.0));
        assert!(matches!(
            semiperiodogram_estimate(&s),
            Err(FdError::DegenerateSeries { .. })
        ));
        assert!(matches!(dct2_estimate(&s), Err(FdError::DegenerateSeries { .. })));
    }

    #[test]
    fn semi_nyquist_symmetry() {
        let s = random_series(65, 7);
        let m = 32.0;
        for delta in [0.3, 1.7, 4.0] {
            let hi = semi_b_at(&s, PI * m + delta, EndpointRule::AsPrinted).unwrap();
            let lo = semi_b_at(&s, PI * m - delta, EndpointRule::AsPrinted).unwrap();
            assert!((hi - lo).abs() < 1e-10, "delta={delta}: {hi} vs {lo}");
        }
    }

    #[test]
    fn dct2_nyquist_symmetry() {
        let s = random_series(65, 8);
        let m = 32.0;
        for delta in [0.3, 1.7, 4.0] {
            let hi = dct2_b_at(&s, 2.0 * PI * m + delta).unwrap();
            let lo = dct2_b_at(&s, 2.0 * PI * m - delta).unwrap();
            assert!((hi * hi - lo * lo).abs() < 1e-10);
        }
    }

    #[test]
    fn even_length_drops_last_sample_with_warning() {
        let s = random_series(34, 9);
        let est = semiperiodogram_estimate(&s).unwrap();
        assert!(est.warnings.iter().any(|w| w.starts_with("dropped_last_sample")));
        let trimmed = Series::new(s.values()[..33].to_vec()).unwrap();
        let est_trimmed = semiperiodogram_estimate(&trimmed).unwrap();
        assert_eq!(est.fd.to_bits(), est_trimmed.fd.to_bits());
    }

    #[test]
    fn too_short_series() {
        let s = random_series(7, 10);
        assert!(matches!(
            semiperiodogram_estimate(&s),
            Err(FdError::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn pure_cosine_concentrates_at_first_frequency() {
        // The l = 1 basis function cos(w_1 (i-m)/m) with w_1 = 2*pi.
        let m = 32usize;
        let s = Series::new(
            (0..=2 * m)
                .map(|i| (2.0 * PI * (i as f64 - m as f64) / m as f64).cos())
                .collect(),
        )
        .unwrap();
        let table = semiperiodogram(&s).unwrap();
        let (max_idx, _) = table
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert_eq!(max_idx, 0, "energy must sit at l = 1");
        assert!(table.values[0] > 100.0 * table.values[1]);
    }

    #[test]
    fn scale_equivariance_and_fd_invariance() {
        let s = random_series(129, 11);
        let a = -2.5f64;
        let scaled = Series::new(s.values().iter().map(|v| a * v).collect()).unwrap();
        let t1 = dct2_periodogram(&s).unwrap();
        let t2 = dct2_periodogram(&scaled).unwrap();
        for (v1, v2) in t1.values.iter().zip(&t2.values) {
            assert!((v2 - a * a * v1).abs() <= 1e-9 * v1.abs().max(1e-300));
        }
        let e1 = dct2_estimate(&s).unwrap();
        let e2 = dct2_estimate(&scaled).unwrap();
        assert!((e1.fd - e2.fd).abs() < 1e-10);
    }

    #[test]
    fn shift_leaves_dct2_ac_bins_invariant() {
        let s = random_series(129, 12);
        let shifted = Series::new(s.values().iter().map(|v| v + 42.0).collect()).unwrap();
        let t1 = dct2_periodogram(&s).unwrap();
        let t2 = dct2_periodogram(&shifted).unwrap();
        for (v1, v2) in t1.values.iter().zip(&t2.values) {
            assert!((v1 - v2).abs() <= 1e-9 * v1.max(1e-12));
        }
    }
}
