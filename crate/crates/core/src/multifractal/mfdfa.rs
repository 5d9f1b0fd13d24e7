//! Multifractal detrended fluctuation analysis.
//!
//! The mean-centred profile is cut into `⌊T/s⌋` segments from the start and
//! `⌊T/s⌋` from the end. Each segment loses its least-squares polynomial of
//! degree `m`, leaving a variance `F²(ν, s)`; then
//!
//! ```text
//! F_q(s) = ( mean_ν F²(ν, s)^{q/2} )^{1/q}      F_0(s) = exp( mean_ν ln F²(ν, s) / 2 )
//! ```
//!
//! and `h(q)` is the slope of `log F_q` against `log s`.

use serde::{Deserialize, Serialize};

use super::{
    derivative, fit_scaling, log_sum_exp, validate_q_grid, Convention, Method, MultifractalSpectrum,
    ScalingFit, SpectrumPoint, NEGATIVE_Q_FLOOR,
};
use crate::regression::log_space_usize;
use crate::{exec, profile, Centering, Error, Matrix, Result, TimeSeries};

pub const MIN_LENGTH: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MfdfaOptions {
    /// Segment sizes; `None` picks [`default_mfdfa_scales`].
    pub scales: Option<Vec<usize>>,
    pub poly_order: usize,
    /// Segment variances below this are raised to it before a negative power.
    pub floor: f64,
}

impl Default for MfdfaOptions {
    fn default() -> Self {
        Self {
            scales: None,
            poly_order: 1,
            floor: NEGATIVE_Q_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mfdfa {
    /// `log_z` holds `log F_q(s)`; `tau` is `q h(q) − 1`.
    pub fit: ScalingFit,
    /// `h(q)`, aligned with `fit.q_grid`.
    pub generalized_hurst: Vec<f64>,
    pub spectrum: MultifractalSpectrum,
}

impl Mfdfa {
    pub fn h_at(&self, q: f64) -> Option<f64> {
        self.fit
            .q_grid
            .iter()
            .position(|&g| (g - q).abs() < 1e-9)
            .map(|i| self.generalized_hurst[i])
    }
}

/// 20 log-spaced sizes from `max(16, m + 2)` to `T/4`.
pub fn default_mfdfa_scales(len: usize, poly_order: usize) -> Vec<usize> {
    log_space_usize((poly_order + 2).max(16), len / 4, 20)
}

pub fn mfdfa(series: &TimeSeries, q_grid: &[f64], options: &MfdfaOptions) -> Result<Mfdfa> {
    validate_q_grid(q_grid)?;
    let len = series.len();
    if len < MIN_LENGTH {
        return Err(Error::SeriesTooShort { needed: MIN_LENGTH, got: len });
    }
    let m = options.poly_order;
    let scales = match &options.scales {
        Some(s) => s.clone(),
        None => default_mfdfa_scales(len, m),
    };
    if scales.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: scales.len() });
    }
    if let Some(&bad) = scales.iter().find(|&&s| s < m + 2 || s > len / 4) {
        return Err(Error::InvalidParameter(format!(
            "segment sizes must lie in [{}, {}], got {bad}",
            m + 2,
            len / 4
        )));
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("segment sizes must be strictly increasing".into()));
    }
    if !(options.floor > 0.0) {
        return Err(Error::InvalidParameter("variance floor must be positive".into()));
    }

    let y = profile(series, Centering::Mean).into_values();
    let variances: Vec<Vec<f64>> = exec::map_indices(scales.len(), |i| segment_variances(&y, scales[i], m));

    let mut warnings = Vec::new();
    if q_grid.iter().any(|&q| q < 0.0) {
        let floored = variances.iter().flatten().filter(|&&v| v < options.floor).count();
        if floored > 0 {
            warnings.push(format!(
                "{floored} segment variances were raised to {:e} for negative q",
                options.floor
            ));
        }
    }

    let rows = exec::map_indices(q_grid.len(), |qi| {
        variances
            .iter()
            .map(|f2| log_fluctuation(f2, q_grid[qi], options.floor))
            .collect::<Vec<f64>>()
    });
    let log_scales: Vec<f64> = scales.iter().map(|&s| (s as f64).ln()).collect();
    let mut fit = fit_scaling(q_grid, log_scales, Matrix::from_rows(rows), Convention::Unnormalized, warnings)?;
    let h = std::mem::take(&mut fit.tau);
    fit.tau = q_grid.iter().zip(&h).map(|(q, h)| q * h - 1.0).collect();

    let spectrum = singularity_spectrum(q_grid, &h);
    Ok(Mfdfa {
        fit,
        generalized_hurst: h,
        spectrum,
    })
}

/// `α = h + q h'`, `f = q (α − h) + 1`, sorted by `α`.
fn singularity_spectrum(q: &[f64], h: &[f64]) -> MultifractalSpectrum {
    let last = q.len() - 1;
    let dh = if q.len() >= 2 { derivative(q, h) } else { vec![0.0; q.len()] };
    let mut points: Vec<SpectrumPoint> = (0..q.len())
        .map(|i| {
            let alpha = h[i] + q[i] * dh[i];
            SpectrumPoint {
                h: alpha,
                d: q[i] * (alpha - h[i]) + 1.0,
                q: q[i],
                boundary_limited: i == 0 || i == last,
            }
        })
        .collect();
    points.sort_by(|a, b| a.h.total_cmp(&b.h));
    MultifractalSpectrum {
        points,
        method: Method::Mfdfa,
    }
}

/// Orthonormal basis of the polynomials of degree ≤ `order` on `0 .. s`.
fn polynomial_basis(s: usize, order: usize) -> Vec<Vec<f64>> {
    let mid = (s as f64 - 1.0) / 2.0;
    let u: Vec<f64> = (0..s).map(|i| (i as f64 - mid) / s as f64).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut v: Vec<f64> = u.iter().map(|x| x.powi(k as i32)).collect();
        // Two Gram–Schmidt passes keep the basis orthogonal to rounding.
        for _ in 0..2 {
            for e in &basis {
                let c: f64 = v.iter().zip(e).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(e).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    basis
}

/// Detrended variances of the `2 ⌊T/s⌋` segments.
fn segment_variances(y: &[f64], s: usize, order: usize) -> Vec<f64> {
    let basis = polynomial_basis(s, order);
    let count = y.len() / s;
    let len = y.len();
    let starts = (0..count).map(|v| v * s).chain((0..count).map(|v| len - (v + 1) * s));
    let mut residual = vec![0.0; s];
    starts
        .map(|a| {
            let seg = &y[a..a + s];
            residual.copy_from_slice(seg);
            for e in &basis {
                let c: f64 = seg.iter().zip(e).map(|(a, b)| a * b).sum();
                residual.iter_mut().zip(e).for_each(|(r, b)| *r -= c * b);
            }
            residual.iter().map(|r| r * r).sum::<f64>() / s as f64
        })
        .collect()
}

fn log_fluctuation(f2: &[f64], q: f64, floor: f64) -> f64 {
    let n = f2.len() as f64;
    if q == 0.0 {
        let mean_log = f2.iter().map(|v| v.max(floor).ln()).sum::<f64>() / n;
        return 0.5 * mean_log;
    }
    let terms = f2.iter().map(|&v| {
        let v = if q < 0.0 { v.max(floor) } else { v };
        0.5 * q * v.ln()
    });
    (log_sum_exp(terms) - n.ln()) / q
}
