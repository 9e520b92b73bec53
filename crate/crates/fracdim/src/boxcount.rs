//! Box-count dimension estimation over dyadic scales.
//!
//! The graph on [0,1] x [min, max] is tiled at level k by 4^(K-k) boxes of
//! width 2^(k-K) and height u * 2^(k-K), u = max - min, and N(eps_k) counts
//! boxes meeting the linearly interpolated graph. fd = -slope of log N on
//! log eps. The standard mode applies the Liebovitch-Toth rule: drop scales
//! with N(eps) > n/5 and the two largest scales.
//!
//! Boxes are half-open, [x, x+w) x [y, y+h), with the outer boundary of the
//! bounding box closed; interior ties are therefore deterministic. Column and
//! knot classification is exact integer arithmetic (i * 2^(K-k) against c * n),
//! so dyadic fixtures count bit-exactly.

use serde::{Deserialize, Serialize};

use crate::error::{FdError, Result};
use crate::estimate::{DiagPoint, Estimate};
use crate::fit::{loglog_fit, LogLogPoint};
use crate::series::Series;

/// Dyadic box counts: scales eps_k = 2^(k-K) and counts N(eps_k), k = 0..=K.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCountTable {
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
    /// Number of dyadic levels K = ceil(log2 n).
    pub levels: usize,
}

/// Scale selection for the regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoxCountMode {
    /// All scales k = 0..=K.
    Naive,
    /// Liebovitch-Toth: exclude scales with N(eps) > n/5 and the two largest.
    Standard,
}

/// Count boxes intersecting the interpolated graph at every dyadic level.
pub fn box_counts(series: &Series) -> Result<BoxCountTable> {
    let n = series.n();
    if n < 2 {
        return Err(FdError::SeriesTooShort { required: 3, actual: series.len() });
    }
    let x = series.values();
    let min = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let u = max - min;
    if u <= 0.0 {
        return Err(FdError::DegenerateSeries { what: "flat data has no bounding box height".into() });
    }

    let levels = if n.is_power_of_two() { n.ilog2() as usize } else { n.ilog2() as usize + 1 };
    let mut scales = Vec::with_capacity(levels + 1);
    let mut counts = Vec::with_capacity(levels + 1);
    for k in 0..=levels {
        scales.push((2.0f64).powi(k as i32 - levels as i32));
        counts.push(count_level(x, n, min, u, levels, k));
    }
    Ok(BoxCountTable { scales, counts, levels })
}

/// Count boxes at one level. Columns are indexed c = 0..2^(K-k); knot i lies
/// strictly inside column c iff c*n < i*m < (c+1)*n with m = 2^(K-k).
fn count_level(x: &[f64], n: usize, min: f64, u: f64, levels: usize, k: usize) -> u64 {
    let m = 1u64 << (levels - k); // columns (and rows) at this level
    let ncols = m;
    let h = u * (2.0f64).powi(k as i32 - levels as i32);
    let nu = n as u64;

    // Interpolant value at column boundary c*w = (c*n)/(m*n): between knots
    // q = (c*n) div m and q+1, at fraction r/m with r = (c*n) mod m.
    let value_at = |c: u64| -> f64 {
        let num = c * nu;
        let q = (num / m) as usize;
        let r = num % m;
        if r == 0 {
            x[q]
        } else {
            x[q] + (x[q + 1] - x[q]) * (r as f64 / m as f64)
        }
    };

    let mut total = 0u64;
    for c in 0..ncols {
        let last = c + 1 == ncols;
        let left = value_at(c);
        let right = value_at(c + 1);

        // Extremes attained inside [x0, x1): the left boundary and interior
        // knots, plus the right boundary when the column is the last one.
        let mut lo_att = left;
        let mut hi_att = left;
        let i_first = (c * nu) / m + 1;
        let i_last = ((c + 1) * nu - 1) / m; // largest i with i*m < (c+1)*n
        for i in i_first..=i_last {
            let v = x[i as usize];
            lo_att = lo_att.min(v);
            hi_att = hi_att.max(v);
        }
        if last {
            lo_att = lo_att.min(right);
            hi_att = hi_att.max(right);
        }

        // On a half-open column the right boundary value is a limit, not
        // attained; it widens the range but a supremum sitting exactly on a
        // row boundary stays out of the row above it.
        let lo = if last { lo_att } else { lo_att.min(right) };
        let (hi, hi_attained) =
            if !last && right > hi_att { (right, false) } else { (hi_att, true) };

        let nrows = m as i64;
        let r_bot = ((lo - min) / h).floor() as i64;
        let z = (hi - min) / h;
        let r_top = if !hi_attained && z == z.floor() {
            z as i64 - 1
        } else {
            z.floor() as i64
        };
        let r_bot = r_bot.clamp(0, nrows - 1);
        let r_top = r_top.clamp(0, nrows - 1);
        total += (r_top - r_bot + 1).max(1) as u64;
    }
    total
}

/// Box-count estimator: fd = -slope of log N(eps) on log eps.
pub fn boxcount_estimate(series: &Series, mode: BoxCountMode) -> Result<Estimate> {
    let table = box_counts(series)?;
    let n = series.n();
    let all: Vec<LogLogPoint> = table
        .scales
        .iter()
        .zip(&table.counts)
        .map(|(&eps, &cnt)| LogLogPoint { s: eps.ln(), y: (cnt as f64).ln() })
        .collect();

    let used: Vec<bool> = match mode {
        BoxCountMode::Naive => vec![true; all.len()],
        BoxCountMode::Standard => {
            let threshold = n as f64 / 5.0;
            (0..all.len())
                .map(|k| {
                    let small_scale = (table.counts[k] as f64) > threshold;
                    let among_two_largest = k + 2 >= all.len();
                    !small_scale && !among_two_largest
                })
                .collect()
        }
    };

    let fit_points: Vec<LogLogPoint> =
        all.iter().zip(&used).filter(|(_, &u)| u).map(|(p, _)| *p).collect();
    if fit_points.len() < 2 {
        return Err(FdError::InsufficientScales { remaining: fit_points.len() });
    }
    let fit = loglog_fit(&fit_points)?;
    let fd = -fit.slope;
    let diag = all
        .iter()
        .zip(&used)
        .map(|(p, &u)| DiagPoint { s: p.s, y: p.y, used: u })
        .collect();
    let name = match mode {
        BoxCountMode::Naive => "boxcount.naive",
        BoxCountMode::Standard => "boxcount",
    };
    Ok(Estimate::from_fit(name.to_string(), fd, None, fit, diag, 1))
}
