//! The common result type carried by every estimator.

use serde::{Deserialize, Serialize};

use crate::fit::FitResult;

/// A log-log diagnostic point; `used` marks points that entered the fit
/// (box-count excludes scales, the wavelet fit drops low levels, and so on).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagPoint {
    pub s: f64,
    pub y: f64,
    pub used: bool,
}

/// A fractal dimension estimate with its diagnostics.
///
/// `fd` is never clamped to [d, d+1]; out-of-range values carry a warning so
/// sampling variability stays visible in the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub fd: f64,
    /// exp(intercept) of the log-log fit; absent for median-of-transects
    /// estimators, which have no regression.
    pub scale: Option<f64>,
    /// Canonical method tag, e.g. "madogram" or "variation:p=1.5:diff=2".
    pub method: String,
    /// Power index, for variation-family methods.
    pub p: Option<f64>,
    pub fit: Option<FitResult>,
    /// All computed (s, y) points, including ones excluded from the fit.
    pub points: Vec<DiagPoint>,
    pub warnings: Vec<String>,
}

impl Estimate {
    pub(crate) fn from_fit(
        method: String,
        fd: f64,
        p: Option<f64>,
        fit: FitResult,
        points: Vec<DiagPoint>,
        topo_dim: usize,
    ) -> Self {
        let mut est = Estimate {
            fd,
            scale: Some(fit.intercept.exp()),
            method,
            p,
            fit: Some(fit),
            points,
            warnings: Vec::new(),
        };
        est.push_range_warning(topo_dim);
        est
    }

    /// Attach the out-of-range diagnostic when fd falls outside [d, d+1].
    pub(crate) fn push_range_warning(&mut self, topo_dim: usize) {
        let lo = topo_dim as f64;
        if self.fd < lo || self.fd > lo + 1.0 {
            self.warnings.push(format!(
                "fd_out_of_range: estimate {} outside [{}, {}]",
                self.fd,
                lo,
                lo + 1.0
            ));
        }
    }
}
