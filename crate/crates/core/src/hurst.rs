//! Rescaled-range (R/S) estimation of the Hurst exponent.
//!
//! For a block `x_1 … x_n` with mean `x̄`,
//!
//! ```text
//! S = sqrt((1/n) Σ (x_t − x̄)²)      R = max_t X_t − min_t X_t,   X_t = Σ_{i≤t} (x_i − x̄)
//! ```
//!
//! and `R/S ∝ n^H`. The curve averages R/S over non-overlapping blocks for a
//! range of block sizes; `H` is the slope of the log-log regression with a
//! free intercept.

use serde::{Deserialize, Serialize};

use crate::regression::{fit_line, log_space_usize};
use crate::{exec, Error, Result, TimeSeries};

/// Below this many samples the estimate carries a reliability warning.
pub const RELIABLE_LENGTH: usize = 200;

/// Default threshold for a regime break in the rolling estimate.
pub const DEFAULT_BREAK_DROP: f64 = 0.05;

/// `(R, S)` of one block.
pub fn rescaled_range(segment: &[f64]) -> Result<(f64, f64)> {
    if segment.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 2,
            got: segment.len(),
        });
    }
    if segment.iter().all(|&v| v == segment[0]) {
        return Err(Error::ZeroVariance);
    }
    let n = segment.len() as f64;
    let mean = segment.iter().sum::<f64>() / n;
    let mut acc = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut ss = 0.0;
    for &v in segment {
        let d = v - mean;
        ss += d * d;
        acc += d;
        lo = lo.min(acc);
        hi = hi.max(acc);
    }
    Ok((hi - lo, (ss / n).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsCurve {
    pub window_sizes: Vec<usize>,
    /// Mean R/S per window size.
    pub rs: Vec<f64>,
    /// Blocks averaged per window size.
    pub counts: Vec<usize>,
    /// Length of the analysed series.
    pub series_len: usize,
}

/// About 20 log-spaced sizes in `[8, T/2]`.
pub fn default_window_sizes(len: usize) -> Vec<usize> {
    log_space_usize(8, (len / 2).max(8), 20)
}

pub fn rs_curve(series: &TimeSeries, window_sizes: Option<&[usize]>) -> Result<RsCurve> {
    rs_curve_values(series.values(), window_sizes)
}

fn rs_curve_values(x: &[f64], window_sizes: Option<&[usize]>) -> Result<RsCurve> {
    let len = x.len();
    if len < 64 {
        return Err(Error::SeriesTooShort { needed: 64, got: len });
    }
    let sizes = match window_sizes {
        Some(w) => w.to_vec(),
        None => default_window_sizes(len),
    };
    if let Some(&bad) = sizes.iter().find(|&&n| n < 2 || n > len) {
        return Err(Error::InvalidParameter(format!(
            "window size {bad} outside [2, {len}]"
        )));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "window sizes must be strictly increasing".into(),
        ));
    }
    let mut curve = RsCurve {
        window_sizes: Vec::new(),
        rs: Vec::new(),
        counts: Vec::new(),
        series_len: len,
    };
    for n in sizes {
        let (sum, count) = x
            .chunks_exact(n)
            .filter_map(|block| rescaled_range(block).ok())
            .fold((0.0, 0usize), |(s, c), (r, sd)| (s + r / sd, c + 1));
        if count > 0 {
            curve.window_sizes.push(n);
            curve.rs.push(sum / count as f64);
            curve.counts.push(count);
        }
    }
    Ok(curve)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstFit {
    #[serde(rename = "H")]
    pub h: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub fit_range: (usize, usize),
    pub warning: Option<String>,
}

pub fn fit_hurst(curve: &RsCurve) -> Result<HurstFit> {
    let points: Vec<(f64, f64)> = curve
        .window_sizes
        .iter()
        .zip(&curve.rs)
        .filter(|(_, &rs)| rs > 0.0)
        .map(|(&n, &rs)| ((n as f64).ln(), rs.ln()))
        .collect();
    if points.len() < 4 {
        return Err(Error::TooFewPoints {
            needed: 4,
            got: points.len(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    let fit = fit_line(&xs, &ys).ok_or(Error::TooFewPoints { needed: 4, got: 0 })?;
    let mut warnings = Vec::new();
    if curve.series_len < RELIABLE_LENGTH {
        warnings.push(format!(
            "series has {} elements; R/S analysis needs at least 200 elements and better more than 300",
            curve.series_len
        ));
    }
    if !(fit.slope > 0.0 && fit.slope < 1.0) {
        warnings.push(format!("estimate H = {:.3} lies outside (0, 1)", fit.slope));
    }
    Ok(HurstFit {
        h: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        fit_range: (
            curve.window_sizes[0],
            *curve.window_sizes.last().expect("at least four sizes"),
        ),
        warning: (!warnings.is_empty()).then(|| warnings.join("; ")),
    })
}

/// Curve and fit with the default window sizes.
pub fn estimate_hurst(series: &TimeSeries) -> Result<(RsCurve, HurstFit)> {
    let curve = rs_curve(series, None)?;
    let fit = fit_hurst(&curve)?;
    Ok((curve, fit))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeBreak {
    /// Prefix length at which the largest drop lands.
    pub t: usize,
    pub drop: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RollingHurst {
    /// `(prefix length, H)`.
    pub points: Vec<(usize, f64)>,
    pub regime_break: Option<RegimeBreak>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollingOptions {
    pub min_prefix: usize,
    /// Distance between consecutive prefix lengths.
    pub stride: usize,
    /// Smallest single-step drop reported as a break.
    pub break_drop: f64,
}

impl Default for RollingOptions {
    fn default() -> Self {
        Self {
            min_prefix: 64,
            stride: 1,
            break_drop: DEFAULT_BREAK_DROP,
        }
    }
}

/// `H(t)` for prefixes `min_prefix, min_prefix + stride, …, T` (the full
/// length is always included), each fitted with default window sizes.
pub fn rolling_hurst(series: &TimeSeries, options: &RollingOptions) -> Result<RollingHurst> {
    let len = series.len();
    let min_prefix = options.min_prefix.max(64);
    if len < min_prefix {
        return Err(Error::SeriesTooShort {
            needed: min_prefix,
            got: len,
        });
    }
    let stride = options.stride.max(1);
    let mut prefixes: Vec<usize> = (min_prefix..=len).step_by(stride).collect();
    if prefixes.last() != Some(&len) {
        prefixes.push(len);
    }
    let x = series.values();
    let estimates = exec::map_indices(prefixes.len(), |i| {
        let t = prefixes[i];
        rs_curve_values(&x[..t], None)
            .and_then(|c| fit_hurst(&c))
            .map(|f| (t, f.h))
    });
    let points = estimates.into_iter().filter_map(Result::ok).collect::<Vec<_>>();
    let regime_break = points
        .windows(2)
        .map(|w| RegimeBreak {
            t: w[1].0,
            drop: w[0].1 - w[1].1,
        })
        .filter(|b| b.drop > options.break_drop)
        .max_by(|a, b| a.drop.total_cmp(&b.drop));
    Ok(RollingHurst {
        points,
        regime_break,
    })
}
