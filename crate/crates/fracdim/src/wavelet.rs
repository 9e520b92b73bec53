//! MODWT wavelet-variance estimator.
//!
//! The series is extended by reflection to length 2 n_s and transformed with
//! the circular maximal overlap discrete wavelet transform out to level
//! J = floor(log2 n_s). Each level-j coefficient vector W_j has 2 n_s entries
//! at scale tau_j = 2^(j-1), and nu^2(tau_j) = ||W_j||^2 / (2 n_s) estimates
//! the wavelet variance, which scales like tau^alpha. A weighted least
//! squares fit of log nu^2 on log tau over levels j = max(1, floor(log2(n_s)/3
//! - 1)) .. J gives alpha_hat, and fd = 2 - alpha_hat / 2.
//!
//! Weights: each log variance is treated as log of a chi-squared average with
//! eta_j = max(1, (2 n_s - L_j + 1) / 2^j) equivalent degrees of freedom
//! (coefficients unaffected by the circular wrap, divided by the level's
//! decorrelation width), so var(log nu^2) ~ trigamma(eta_j / 2) and the
//! weight is its reciprocal.

use crate::error::{FdError, Result};
use crate::estimate::{DiagPoint, Estimate};
use crate::fit::{weighted_loglog_fit, LogLogPoint};
use crate::series::Series;

/// MODWT filter pair (already rescaled by 1/sqrt(2) from the unit-norm DWT
/// filters, as the transform requires).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    pub id: String,
    scaling: Vec<f64>,
    wavelet: Vec<f64>,
}

impl WaveletFilter {
    /// Look a filter up by id; "haar" (default) and "d4" are available.
    pub fn by_id(id: &str) -> Result<Self> {
        match id {
            "haar" => Ok(Self {
                id: id.to_string(),
                scaling: vec![0.5, 0.5],
                wavelet: vec![0.5, -0.5],
            }),
            "d4" => {
                let s = 2.0f64.sqrt();
                let g: Vec<f64> = [
                    (1.0 + 3.0f64.sqrt()) / (4.0 * s),
                    (3.0 + 3.0f64.sqrt()) / (4.0 * s),
                    (3.0 - 3.0f64.sqrt()) / (4.0 * s),
                    (1.0 - 3.0f64.sqrt()) / (4.0 * s),
                ]
                .iter()
                .map(|v| v / s)
                .collect();
                let l = g.len();
                let h: Vec<f64> = (0..l)
                    .map(|k| if k % 2 == 0 { g[l - 1 - k] } else { -g[l - 1 - k] })
                    .collect();
                Ok(Self { id: id.to_string(), scaling: g, wavelet: h })
            }
            other => Err(FdError::InvalidParameters(format!("unknown wavelet filter '{other}'"))),
        }
    }

    pub fn width(&self) -> usize {
        self.scaling.len()
    }

    /// Width of the level-j equivalent filter: (2^j - 1)(L - 1) + 1.
    pub fn level_width(&self, level: usize) -> usize {
        ((1usize << level) - 1) * (self.width() - 1) + 1
    }
}

/// MODWT decomposition of the reflected series: per-level detail coefficients
/// plus the final scaling coefficients, each of length 2 n_s.
#[derive(Debug, Clone, PartialEq)]
pub struct Modwt {
    pub details: Vec<Vec<f64>>,
    pub scaling: Vec<f64>,
}

/// Circular MODWT of the reflection-extended series out to `levels`.
pub fn modwt(series: &Series, filter: &WaveletFilter, levels: usize) -> Result<Modwt> {
    let ns = series.len();
    if levels == 0 {
        return Err(FdError::InvalidParameters("need at least one wavelet level".into()));
    }
    if ns < (1usize << levels) {
        return Err(FdError::SeriesTooShort { required: 1 << levels, actual: ns });
    }
    // Reflection boundary: x_0..x_{ns-1}, x_{ns-1}..x_0.
    let mut v: Vec<f64> = Vec::with_capacity(2 * ns);
    v.extend_from_slice(series.values());
    v.extend(series.values().iter().rev());
    let m = v.len();

    let mut details = Vec::with_capacity(levels);
    for j in 1..=levels {
        let stride = 1usize << (j - 1);
        let mut w = vec![0.0; m];
        let mut next = vec![0.0; m];
        for t in 0..m {
            let mut acc_w = 0.0;
            let mut acc_v = 0.0;
            for (l, (&h, &g)) in filter.wavelet.iter().zip(&filter.scaling).enumerate() {
                let idx = (t + m - (stride * l) % m) % m;
                acc_w += h * v[idx];
                acc_v += g * v[idx];
            }
            w[t] = acc_w;
            next[t] = acc_v;
        }
        details.push(w);
        v = next;
    }
    Ok(Modwt { details, scaling: v })
}

/// Per-level wavelet variances with their effective degrees of freedom.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletVariances {
    /// Scales tau_j = 2^(j-1) for j = 1..=levels.
    pub scales: Vec<f64>,
    pub variances: Vec<f64>,
    pub edofs: Vec<f64>,
}

pub fn wavelet_variances(series: &Series, filter: &WaveletFilter) -> Result<WaveletVariances> {
    let ns = series.len();
    let levels = (ns as f64).log2().floor() as usize;
    let transform = modwt(series, filter, levels)?;
    let denom = (2 * ns) as f64;
    let mut scales = Vec::with_capacity(levels);
    let mut variances = Vec::with_capacity(levels);
    let mut edofs = Vec::with_capacity(levels);
    for (j, w) in transform.details.iter().enumerate() {
        let level = j + 1;
        scales.push((1u64 << (level - 1)) as f64);
        variances.push(w.iter().map(|c| c * c).sum::<f64>() / denom);
        let unaffected = (2 * ns).saturating_sub(filter.level_width(level)) + 1;
        edofs.push((unaffected as f64 / (1u64 << level) as f64).max(1.0));
    }
    Ok(WaveletVariances { scales, variances, edofs })
}

/// Wavelet estimator with the default Haar filter.
pub fn wavelet_estimate(series: &Series) -> Result<Estimate> {
    wavelet_estimate_with(series, "haar")
}

pub fn wavelet_estimate_with(series: &Series, filter_id: &str) -> Result<Estimate> {
    let filter = WaveletFilter::by_id(filter_id)?;
    let ns = series.len();
    if ns < 4 {
        return Err(FdError::SeriesTooShort { required: 4, actual: ns });
    }
    let wv = wavelet_variances(series, &filter)?;
    let levels = wv.scales.len();
    let low = (((ns as f64).log2() / 3.0 - 1.0).floor() as i64).max(1) as usize;

    let mut fit_points = Vec::new();
    let mut weights = Vec::new();
    let mut diag = Vec::with_capacity(levels);
    for j in 1..=levels {
        let var = wv.variances[j - 1];
        let in_band = j >= low;
        let usable = in_band && var > 0.0;
        if var > 0.0 {
            let point = LogLogPoint { s: wv.scales[j - 1].ln(), y: var.ln() };
            diag.push(DiagPoint { s: point.s, y: point.y, used: usable });
            if usable {
                fit_points.push(point);
                weights.push(1.0 / trigamma(wv.edofs[j - 1] / 2.0));
            }
        }
    }
    if fit_points.len() < 2 {
        return Err(FdError::DegenerateSeries {
            what: "fewer than 2 positive wavelet variances in the fit band".into(),
        });
    }
    let fit = weighted_loglog_fit(&fit_points, &weights)?;
    let fd = 2.0 - 0.5 * fit.slope;
    let name = if filter_id == "haar" { "wavelet".to_string() } else { format!("wavelet:filter={filter_id}") };
    Ok(Estimate::from_fit(name, fd, None, fit, diag, 1))
}

/// Trigamma function psi'(x) for x > 0: recurrence up to x >= 6, then the
/// asymptotic series. Accurate to ~1e-12, plenty for regression weights.
pub(crate) fn trigamma(x: f64) -> f64 {
    assert!(x > 0.0, "trigamma domain");
    let mut x = x;
    let mut acc = 0.0;
    while x < 6.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv * (1.0 + inv / 2.0 + inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))))
}
