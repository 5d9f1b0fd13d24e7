//! Wavelet transform modulus maxima.
//!
//! A modulus maximum at scale `s` is a location where `|W|` is at least as
//! large as both neighbours and strictly larger than at least one of them.
//! Maxima are chained across adjacent scales into maxima lines, the set of
//! lines is the skeleton, and the partition function sums, over the lines
//! alive at `s`, the `q`-th power of the largest L1-normalised modulus
//! `|W|/√s` the line reaches at scales up to `s`.

use serde::{Deserialize, Serialize};

use super::{
    fit_scaling, legendre_spectrum, log_sum_exp, validate_q_grid, Convention, Method,
    MultifractalSpectrum, ScalingFit, SignalKind, NEGATIVE_Q_FLOOR,
};
use crate::cwt::{cwt, default_scales, Wavelet, WaveletField};
use crate::{Error, Matrix, Result, TimeSeries};

/// Interior locations of row `scale_index` holding a modulus maximum.
pub fn find_modulus_maxima(field: &WaveletField, scale_index: usize) -> Vec<usize> {
    let row: Vec<f64> = field
        .coefficients
        .row(scale_index)
        .iter()
        .map(|c| c.norm())
        .collect();
    maxima_of(&row)
}

fn maxima_of(row: &[f64]) -> Vec<usize> {
    (1..row.len().saturating_sub(1))
        .filter(|&l| {
            let (a, m, b) = (row[l - 1], row[l], row[l + 1]);
            m >= a && m >= b && (m > a || m > b)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkeletonPoint {
    pub scale_index: usize,
    pub location: usize,
    /// `|W|` at this point.
    pub modulus: f64,
}

/// Points on consecutive scales, from the largest scale down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximaLine {
    pub points: Vec<SkeletonPoint>,
}

impl MaximaLine {
    pub fn top(&self) -> &SkeletonPoint {
        &self.points[0]
    }

    /// The smallest-scale end.
    pub fn bottom(&self) -> &SkeletonPoint {
        self.points.last().expect("lines are non-empty")
    }

    pub fn point_at(&self, scale_index: usize) -> Option<&SkeletonPoint> {
        let top = self.top().scale_index;
        let bottom = self.bottom().scale_index;
        (bottom..=top)
            .contains(&scale_index)
            .then(|| &self.points[top - scale_index])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub lines: Vec<MaximaLine>,
    pub scales: Vec<f64>,
}

impl Skeleton {
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Number of lines with a point at `scale_index`.
    pub fn alive_at(&self, scale_index: usize) -> usize {
        self.lines
            .iter()
            .filter(|l| l.point_at(scale_index).is_some())
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkeletonOptions {
    /// Lines spanning fewer scale steps are dropped.
    pub min_steps: usize,
    /// Chaining window is `±max(1, ⌈window_factor · s⌉)` samples.
    pub window_factor: f64,
    /// Maxima below this fraction of the field's largest modulus are ignored.
    pub noise_floor: f64,
    /// Ignore maxima inside the cone of influence.
    pub trusted_only: bool,
}

impl Default for SkeletonOptions {
    fn default() -> Self {
        Self {
            min_steps: 4,
            window_factor: 0.5,
            noise_floor: 1e-9,
            trusted_only: true,
        }
    }
}

pub fn build_skeleton(field: &WaveletField) -> Result<Skeleton> {
    build_skeleton_with(field, &SkeletonOptions::default())
}

/// Greedy chaining from the largest scale downward. At each step, candidate
/// (line, maximum) pairs within the window are taken in order of increasing
/// distance, ties going to the line with the larger modulus; unmatched lines
/// end and unmatched maxima start new lines.
pub fn build_skeleton_with(field: &WaveletField, options: &SkeletonOptions) -> Result<Skeleton> {
    let n_scales = field.n_scales();
    if n_scales == 0 || field.n_locations() == 0 {
        return Err(Error::EmptyGrid("wavelet field"));
    }
    if n_scales < 8 {
        return Err(Error::TooFewPoints { needed: 8, got: n_scales });
    }
    if field.n_locations() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: field.n_locations() });
    }
    let modulus = field.modulus();
    let peak = modulus.as_slice().iter().copied().fold(0.0, f64::max);
    let threshold = options.noise_floor * peak;

    let maxima_at = |si: usize| -> Vec<SkeletonPoint> {
        maxima_of(modulus.row(si))
            .into_iter()
            .filter(|&l| !options.trusted_only || field.is_trusted(si, l))
            .map(|l| SkeletonPoint {
                scale_index: si,
                location: l,
                modulus: *modulus.get(si, l),
            })
            .filter(|p| peak > 0.0 && p.modulus > threshold)
            .collect()
    };

    let mut finished: Vec<MaximaLine> = Vec::new();
    let mut active: Vec<MaximaLine> = maxima_at(n_scales - 1)
        .into_iter()
        .map(|p| MaximaLine { points: vec![p] })
        .collect();
    for si in (0..n_scales - 1).rev() {
        let maxima = maxima_at(si);
        let window = (options.window_factor * field.scales[si + 1]).ceil().max(1.0) as usize;
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (li, line) in active.iter().enumerate() {
            let at = line.bottom().location;
            for (mi, m) in maxima.iter().enumerate() {
                let dist = at.abs_diff(m.location);
                if dist <= window {
                    candidates.push((dist, li, mi));
                }
            }
        }
        candidates.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| {
                    active[b.1]
                        .bottom()
                        .modulus
                        .total_cmp(&active[a.1].bottom().modulus)
                })
                .then_with(|| a.1.cmp(&b.1))
                .then_with(|| a.2.cmp(&b.2))
        });
        let mut line_taken = vec![None; active.len()];
        let mut max_taken = vec![false; maxima.len()];
        for (_, li, mi) in candidates {
            if line_taken[li].is_none() && !max_taken[mi] {
                line_taken[li] = Some(mi);
                max_taken[mi] = true;
            }
        }
        let mut next = Vec::with_capacity(maxima.len());
        for (mut line, taken) in active.into_iter().zip(line_taken) {
            match taken {
                Some(mi) => {
                    line.points.push(maxima[mi]);
                    next.push(line);
                }
                None => finished.push(line),
            }
        }
        next.extend(
            maxima
                .iter()
                .zip(&max_taken)
                .filter(|(_, &t)| !t)
                .map(|(&p, _)| MaximaLine { points: vec![p] }),
        );
        active = next;
    }
    finished.extend(active);
    finished.retain(|l| l.points.len() > options.min_steps);
    finished.sort_by(|a, b| {
        b.top()
            .scale_index
            .cmp(&a.top().scale_index)
            .then_with(|| a.top().location.cmp(&b.top().location))
            .then_with(|| a.bottom().location.cmp(&b.bottom().location))
    });
    Ok(Skeleton {
        lines: finished,
        scales: field.scales.clone(),
    })
}

/// Partition function on every scale of a skeleton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtmmPartition {
    pub q_grid: Vec<f64>,
    pub scales: Vec<f64>,
    /// Lines alive per scale, i.e. `Z(0, s)`.
    pub counts: Vec<usize>,
    /// `log Z(q, s)`, rows follow `q_grid`; `−∞` where no line is alive.
    pub log_z: Matrix<f64>,
}

pub fn wtmm_partition(skeleton: &Skeleton, q_grid: &[f64], floor: f64) -> Result<WtmmPartition> {
    validate_q_grid(q_grid)?;
    let n_scales = skeleton.scales.len();
    // Per scale, the running supremum of |W|/√s of every line alive there.
    let mut sups: Vec<Vec<f64>> = vec![Vec::new(); n_scales];
    for line in &skeleton.lines {
        let mut sup = 0.0f64;
        for p in line.points.iter().rev() {
            sup = sup.max(p.modulus / skeleton.scales[p.scale_index].sqrt());
            sups[p.scale_index].push(sup);
        }
    }
    let counts: Vec<usize> = sups.iter().map(Vec::len).collect();
    let rows = q_grid
        .iter()
        .map(|&q| {
            sups.iter()
                .map(|s| {
                    if s.is_empty() {
                        f64::NEG_INFINITY
                    } else if q == 0.0 {
                        (s.len() as f64).ln()
                    } else if q > 0.0 {
                        log_sum_exp(s.iter().filter(|&&v| v > 0.0).map(|&v| q * v.ln()))
                    } else {
                        log_sum_exp(s.iter().map(|&v| q * v.max(floor).ln()))
                    }
                })
                .collect()
        })
        .collect();
    Ok(WtmmPartition {
        q_grid: q_grid.to_vec(),
        scales: skeleton.scales.clone(),
        counts,
        log_z: Matrix::from_rows(rows),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtmmOptions {
    pub wavelet: Wavelet,
    pub signal: SignalKind,
    /// CWT scales; `None` uses [`default_scales`].
    pub scales: Option<Vec<f64>>,
    /// Inclusive scale window for the regression; `None` uses `[4, T/32]`.
    pub fit_range: Option<(f64, f64)>,
    pub floor: f64,
    pub skeleton: SkeletonOptions,
}

impl Default for WtmmOptions {
    fn default() -> Self {
        Self {
            wavelet: Wavelet::MexicanHat,
            signal: SignalKind::Path,
            scales: None,
            fit_range: None,
            floor: NEGATIVE_Q_FLOOR,
            skeleton: SkeletonOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wtmm {
    pub field: WaveletField,
    pub skeleton: Skeleton,
    pub partition: WtmmPartition,
    /// Regression over the fit range only.
    pub fit: ScalingFit,
    pub spectrum: MultifractalSpectrum,
}

pub fn wtmm_spectrum(series: &TimeSeries, wavelet: Wavelet, q_grid: &[f64]) -> Result<Wtmm> {
    wtmm_spectrum_with(
        series,
        q_grid,
        &WtmmOptions {
            wavelet,
            ..WtmmOptions::default()
        },
    )
}

pub fn wtmm_spectrum_with(series: &TimeSeries, q_grid: &[f64], options: &WtmmOptions) -> Result<Wtmm> {
    validate_q_grid(q_grid)?;
    let values = options.signal.function_values(series.values());
    let input = TimeSeries::new(values)?;
    let len = input.len();
    let scales = options.scales.clone().unwrap_or_else(|| default_scales(len));
    let field = cwt(&input, options.wavelet, Some(&scales))?;
    let skeleton = build_skeleton_with(&field, &options.skeleton)?;
    if skeleton.is_empty() {
        return Err(Error::EmptySkeleton);
    }
    let partition = wtmm_partition(&skeleton, q_grid, options.floor)?;

    let (lo, hi) = options.fit_range.unwrap_or((4.0, len as f64 / 32.0));
    let used: Vec<usize> = (0..scales.len())
        .filter(|&i| scales[i] >= lo && scales[i] <= hi && partition.counts[i] > 0)
        .collect();
    if used.len() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: used.len() });
    }
    let log_scales: Vec<f64> = used.iter().map(|&i| scales[i].ln()).collect();
    let log_z = Matrix::from_rows(
        partition
            .log_z
            .iter_rows()
            .map(|row| used.iter().map(|&i| row[i]).collect())
            .collect(),
    );
    let fit = fit_scaling(q_grid, log_scales, log_z, Convention::Unnormalized, Vec::new())?;
    let spectrum = legendre_spectrum(&fit, Convention::Unnormalized, Method::Wtmm)?;
    Ok(Wtmm {
        field,
        skeleton,
        partition,
        fit,
        spectrum,
    })
}
