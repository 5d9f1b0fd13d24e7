//! Multifractal spectrum estimation.
//!
//! Three routes lead to a scaling function `τ(q)` and a spectrum `d(h)`:
//!
//! * [`oscillation_structure`]: ranges of the signal on dyadic cells,
//! * [`mfdfa`]: multifractal detrended fluctuation analysis,
//! * [`wtmm_spectrum`]: suprema of the wavelet modulus along maxima lines.
//!
//! Two conventions for the partition function coexist. The *normalized* one
//! weights the sum over `2^j` cells by `1/2^j` and gives `τ(q) = q/2` for
//! Brownian motion; the *unnormalized* one drops the weight and gives
//! `τ(q) = q/2 − 1`, with `τ(0) = −1` on a fully covered support. They differ
//! by exactly one.

mod holder;
mod legendre;
mod mfdfa;
mod oscillation;
mod wtmm;

use serde::{Deserialize, Serialize};

use crate::regression::fit_line;
use crate::{Error, Matrix, Result};

pub use holder::{holder_at_point, HolderEstimate};
pub use legendre::legendre_spectrum;
pub use mfdfa::{default_mfdfa_scales, mfdfa, Mfdfa, MfdfaOptions};
pub use oscillation::{default_levels, oscillation_structure, OscillationOptions, OscillationStructure};
pub use wtmm::{
    build_skeleton, build_skeleton_with, find_modulus_maxima, wtmm_partition, wtmm_spectrum,
    wtmm_spectrum_with, MaximaLine, Skeleton, SkeletonOptions, SkeletonPoint, Wtmm, WtmmOptions,
    WtmmPartition,
};

/// Floor applied to ranges, fluctuations and suprema before raising them to a
/// negative power.
pub const NEGATIVE_Q_FLOOR: f64 = 1e-12;

/// `−5, −4.75, …, 5`.
pub fn default_q_grid() -> Vec<f64> {
    q_grid(-5.0, 5.0, 0.25)
}

/// `lo, lo + step, …, hi` (inclusive, snapped to the step).
pub fn q_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `Z(q, j) = 2^{−j} Σ R^q`; spectrum `d(h) = min_q (1 − τ(q) + hq)`.
    Normalized,
    /// `Z(q, j) = Σ R^q`; spectrum `d(h) = min_q (hq − τ(q))`.
    #[default]
    Unnormalized,
}

/// How the input samples relate to the analysed function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalKind {
    /// The samples are the function itself (e.g. a Brownian path).
    #[default]
    Path,
    /// The samples are increments or cell masses; the function is their
    /// running sum starting from zero (e.g. a cascade's distribution function).
    Increments,
}

impl SignalKind {
    pub(crate) fn function_values(self, values: &[f64]) -> Vec<f64> {
        match self {
            SignalKind::Path => values.to_vec(),
            SignalKind::Increments => std::iter::once(0.0)
                .chain(values.iter().scan(0.0, |acc, v| {
                    *acc += v;
                    Some(*acc)
                }))
                .collect(),
        }
    }
}

/// Partition function on a scale grid and the fitted scaling exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub q_grid: Vec<f64>,
    /// Regression abscissae, one per column of `log_z`.
    pub log_scales: Vec<f64>,
    /// `log Z(q, ·)`, rows follow `q_grid`. Non-finite entries were excluded
    /// from the fit.
    pub log_z: Matrix<f64>,
    pub tau: Vec<f64>,
    pub fit_r2: Vec<f64>,
    pub convention: Convention,
    pub warnings: Vec<String>,
}

impl ScalingFit {
    pub fn tau_at(&self, q: f64) -> Option<f64> {
        self.q_grid
            .iter()
            .position(|&g| (g - q).abs() < 1e-9)
            .map(|i| self.tau[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oscillation,
    Mfdfa,
    Wtmm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oscillation => "oscillation",
            Method::Mfdfa => "mfdfa",
            Method::Wtmm => "wtmm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub h: f64,
    pub d: f64,
    /// The `q` that produced this point.
    pub q: f64,
    /// The minimising `q` sits at an end of the q grid.
    pub boundary_limited: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultifractalSpectrum {
    /// Sorted by `h`.
    pub points: Vec<SpectrumPoint>,
    pub method: Method,
}

impl MultifractalSpectrum {
    pub fn h_min(&self) -> f64 {
        self.points.iter().map(|p| p.h).fold(f64::INFINITY, f64::min)
    }

    pub fn h_max(&self) -> f64 {
        self.points.iter().map(|p| p.h).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn width(&self) -> f64 {
        self.h_max() - self.h_min()
    }

    /// Width of the part of the spectrum with `d ≥ d_min`.
    pub fn width_above(&self, d_min: f64) -> f64 {
        let hs: Vec<f64> = self
            .points
            .iter()
            .filter(|p| p.d >= d_min)
            .map(|p| p.h)
            .collect();
        if hs.is_empty() {
            return 0.0;
        }
        hs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - hs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Point with the largest `d`.
    pub fn peak(&self) -> SpectrumPoint {
        *self
            .points
            .iter()
            .max_by(|a, b| a.d.total_cmp(&b.d))
            .expect("spectrum has points")
    }

    /// No interior point lies more than `tol` below the chord of its
    /// neighbours.
    pub fn is_concave(&self, tol: f64) -> bool {
        self.points.windows(3).all(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            if c.h - a.h <= 0.0 {
                return true;
            }
            let chord = a.d + (c.d - a.d) * (b.h - a.h) / (c.h - a.h);
            b.d >= chord - tol
        })
    }
}

/// Fits `τ(q)` as the slope of every row of `log_z` against `log_scales`,
/// skipping non-finite entries.
pub(crate) fn fit_scaling(
    q_grid: &[f64],
    log_scales: Vec<f64>,
    log_z: Matrix<f64>,
    convention: Convention,
    mut warnings: Vec<String>,
) -> Result<ScalingFit> {
    let mut tau = Vec::with_capacity(q_grid.len());
    let mut fit_r2 = Vec::with_capacity(q_grid.len());
    for (qi, &q) in q_grid.iter().enumerate() {
        let (xs, ys): (Vec<f64>, Vec<f64>) = log_scales
            .iter()
            .zip(log_z.row(qi))
            .filter(|(_, y)| y.is_finite())
            .map(|(&x, &y)| (x, y))
            .unzip();
        let fit = fit_line(&xs, &ys).ok_or(Error::NonFiniteTau(q))?;
        if xs.len() < log_scales.len() {
            warnings.push(format!(
                "q = {q}: {} of {} scales had no finite partition value",
                log_scales.len() - xs.len(),
                log_scales.len()
            ));
        }
        tau.push(fit.slope);
        fit_r2.push(fit.r_squared);
    }
    Ok(ScalingFit {
        q_grid: q_grid.to_vec(),
        log_scales,
        log_z,
        tau,
        fit_r2,
        convention,
        warnings,
    })
}

pub(crate) fn validate_q_grid(q_grid: &[f64]) -> Result<()> {
    if q_grid.is_empty() {
        return Err(Error::EmptyGrid("q"));
    }
    if q_grid.iter().any(|q| !q.is_finite()) {
        return Err(Error::InvalidParameter("q values must be finite".into()));
    }
    if q_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("q grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `log Σ_i exp(terms_i)`, stable for widely spread terms.
pub(crate) fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Central differences of `ys` over `xs`, one-sided at the ends.
pub(crate) fn derivative(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                _ if i == n - 1 => (n - 2, n - 1),
                _ => (i - 1, i + 1),
            };
            (ys[b] - ys[a]) / (xs[b] - xs[a])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_grid_defaults() {
        let q = default_q_grid();
        assert_eq!(q.len(), 41);
        assert_eq!(q[0], -5.0);
        assert_eq!(q[20], 0.0);
        assert_eq!(q[40], 5.0);
    }

    #[test]
    fn increments_integrate_from_zero() {
        assert_eq!(SignalKind::Increments.function_values(&[1.0, 2.0, 3.0]), vec![0.0, 1.0, 3.0, 6.0]);
        assert_eq!(SignalKind::Path.function_values(&[1.0, 2.0]), vec![1.0, 2.0]);
    }

    #[test]
    fn log_sum_exp_extremes() {
        let v = [-1000.0, -1000.0];
        assert!((log_sum_exp(v.iter().copied()) - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(std::iter::empty()), f64::NEG_INFINITY);
    }

    #[test]
    fn concavity_check() {
        let mk = |pts: &[(f64, f64)]| MultifractalSpectrum {
            points: pts
                .iter()
                .map(|&(h, d)| SpectrumPoint { h, d, q: 0.0, boundary_limited: false })
                .collect(),
            method: Method::Oscillation,
        };
        assert!(mk(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).is_concave(0.0));
        assert!(!mk(&[(0.0, 1.0), (0.5, 0.0), (1.0, 1.0)]).is_concave(0.05));
        let s = mk(&[(0.2, 0.5), (0.5, 1.0), (0.9, 0.7)]);
        assert!((s.width() - 0.7).abs() < 1e-15);
        assert!((s.width_above(0.6) - 0.4).abs() < 1e-15);
        assert_eq!(s.peak().h, 0.5);
    }
}
