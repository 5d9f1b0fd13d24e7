//! Sample moments and correlation estimators.
//!
//! All estimators use the biased divisor `T`:
//!
//! ```text
//! x̄ = (1/T) Σ x_t            s² = (1/T) Σ (x_t − x̄)²
//! γ̂_xy(k) = (1/T) Σ_{t=1}^{T−k} (x_t − x̄)(y_{t+k} − ȳ)
//! ```
//!
//! Negative lags swap the roles of the two series, `γ̂_xy(−k) = γ̂_yx(k)`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    /// Divisor `T`.
    pub variance: f64,
}

pub fn sample_moments(series: &TimeSeries) -> Moments {
    moments(series.values())
}

pub(crate) fn moments(x: &[f64]) -> Moments {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let variance = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Moments { mean, variance }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    Auto,
    Cross,
}

/// How covariances are turned into correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Raw covariances.
    Covariance,
    /// Divide by `s_x · s_y`; bounded by 1 in magnitude.
    #[default]
    Standard,
    /// Divide by the lag-zero cross-covariance `γ̂_xy(0)`. Not bounded by 1.
    Paper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFunction {
    pub lags: Vec<i64>,
    pub values: Vec<f64>,
    pub kind: CorrelationKind,
    pub normalization: Normalization,
}

impl CorrelationFunction {
    pub fn at(&self, lag: i64) -> Option<f64> {
        self.lags
            .iter()
            .position(|&l| l == lag)
            .map(|i| self.values[i])
    }

    /// Lag of the largest value.
    pub fn argmax(&self) -> i64 {
        let (i, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| {
                if v > acc.1 {
                    (i, v)
                } else {
                    acc
                }
            });
        self.lags[i]
    }
}

/// `⌊T/4⌋`.
pub fn default_max_lag(len: usize) -> usize {
    len / 4
}

/// `γ̂_xy(k)` for `0 ≤ k < T`, from deviations that are already centred.
fn lagged_product(dx: &[f64], dy: &[f64], k: usize) -> f64 {
    let n = dx.len();
    dx[..n - k]
        .iter()
        .zip(&dy[k..])
        .map(|(a, b)| a * b)
        .sum::<f64>()
        / n as f64
}

fn deviations(x: &[f64]) -> Vec<f64> {
    let m = moments(x).mean;
    x.iter().map(|v| v - m).collect()
}

fn check_lag(max_lag: usize, len: usize) -> Result<()> {
    if max_lag >= len {
        return Err(Error::MaxLagTooLarge { max_lag, len });
    }
    Ok(())
}

/// Autocovariances `γ̂_0 … γ̂_L`.
pub fn autocovariance(series: &TimeSeries, max_lag: usize) -> Result<CorrelationFunction> {
    let x = series.values();
    check_lag(max_lag, x.len())?;
    let d = deviations(x);
    Ok(CorrelationFunction {
        lags: (0..=max_lag as i64).collect(),
        values: (0..=max_lag).map(|k| lagged_product(&d, &d, k)).collect(),
        kind: CorrelationKind::Auto,
        normalization: Normalization::Covariance,
    })
}

/// Autocorrelations `ρ̂_k = γ̂_k / γ̂_0`.
pub fn autocorrelation(series: &TimeSeries, max_lag: usize) -> Result<CorrelationFunction> {
    let mut acf = autocovariance(series, max_lag)?;
    let g0 = acf.values[0];
    if g0 == 0.0 || constant(series.values()) {
        return Err(Error::ZeroVariance);
    }
    for v in &mut acf.values {
        *v /= g0;
    }
    acf.values[0] = 1.0;
    acf.normalization = Normalization::Standard;
    Ok(acf)
}

fn constant(x: &[f64]) -> bool {
    x.iter().all(|&v| v == x[0])
}

/// Cross-covariance for lags `−L ..= L`.
pub fn cross_covariance(x: &TimeSeries, y: &TimeSeries, max_lag: usize) -> Result<CorrelationFunction> {
    let (xs, ys) = (x.values(), y.values());
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    check_lag(max_lag, xs.len())?;
    let (dx, dy) = (deviations(xs), deviations(ys));
    let l = max_lag as i64;
    let lags: Vec<i64> = (-l..=l).collect();
    let values = lags
        .iter()
        .map(|&k| {
            if k >= 0 {
                lagged_product(&dx, &dy, k as usize)
            } else {
                lagged_product(&dy, &dx, (-k) as usize)
            }
        })
        .collect();
    Ok(CorrelationFunction {
        lags,
        values,
        kind: CorrelationKind::Cross,
        normalization: Normalization::Covariance,
    })
}

/// Cross-correlation for lags `−L ..= L` under the chosen normalization.
pub fn cross_correlation(
    x: &TimeSeries,
    y: &TimeSeries,
    max_lag: usize,
    normalization: Normalization,
) -> Result<CorrelationFunction> {
    let mut ccf = cross_covariance(x, y, max_lag)?;
    let denom = match normalization {
        Normalization::Covariance => return Ok(ccf),
        Normalization::Standard => {
            if constant(x.values()) || constant(y.values()) {
                return Err(Error::ZeroDenominator);
            }
            (moments(x.values()).variance * moments(y.values()).variance).sqrt()
        }
        Normalization::Paper => ccf.at(0).expect("lag 0 is always present"),
    };
    if denom == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    for v in &mut ccf.values {
        *v /= denom;
    }
    ccf.normalization = normalization;
    Ok(ccf)
}
