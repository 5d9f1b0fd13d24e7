//! Range-based partition functions on dyadic cells.
//!
//! At level `j` the sample axis `0 ..= N−1` is cut at `b_k = ⌊k (N−1) / 2^j⌋`
//! and cell `k` holds the samples `b_k ..= b_{k+1}`; neighbouring cells share
//! their boundary sample so the ranges see every increment. With `R_k` the
//! range (max − min) of the function on cell `k`,
//!
//! ```text
//! Z'(q, j) = Σ_k R_k^q          Z(q, j) = 2^{−j} Z'(q, j)
//! ```
//!
//! and `τ(q)` is the least-squares slope of `log Z` against `log 2^{−j}`.

use serde::{Deserialize, Serialize};

use super::{fit_scaling, log_sum_exp, validate_q_grid, Convention, ScalingFit, SignalKind, NEGATIVE_Q_FLOOR};
use crate::{exec, Error, Matrix, Result, TimeSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationOptions {
    /// Inclusive dyadic level window; `None` picks [`default_levels`].
    pub levels: Option<(u32, u32)>,
    pub signal: SignalKind,
    /// Ranges below this are raised to it before a negative power.
    pub floor: f64,
}

impl Default for OscillationOptions {
    fn default() -> Self {
        Self {
            levels: None,
            signal: SignalKind::Path,
            floor: NEGATIVE_Q_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationStructure {
    pub levels: Vec<u32>,
    pub normalized: ScalingFit,
    pub unnormalized: ScalingFit,
}

impl OscillationStructure {
    pub fn fit(&self, convention: Convention) -> &ScalingFit {
        match convention {
            Convention::Normalized => &self.normalized,
            Convention::Unnormalized => &self.unnormalized,
        }
    }
}

/// Levels `2 ..= J − 4` where `2^J ≤ N − 1`, so the finest cells span 16
/// samples.
pub fn default_levels(points: usize) -> (u32, u32) {
    let top = usize::BITS - 1 - points.saturating_sub(1).max(1).leading_zeros();
    (2, top.saturating_sub(4))
}

pub fn oscillation_structure(
    series: &TimeSeries,
    q_grid: &[f64],
    options: &OscillationOptions,
) -> Result<OscillationStructure> {
    validate_q_grid(q_grid)?;
    let f = options.signal.function_values(series.values());
    let n = f.len();
    let (j_min, j_max) = options.levels.unwrap_or_else(|| default_levels(n));
    if j_max < j_min || j_max - j_min + 1 < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: if j_max < j_min { 0 } else { (j_max - j_min + 1) as usize },
        });
    }
    let needed = 1usize
        .checked_shl(j_max + 2)
        .ok_or_else(|| Error::InvalidParameter(format!("level {j_max} is too fine")))?;
    if n - 1 < needed {
        return Err(Error::SeriesTooShort { needed: needed + 1, got: n });
    }
    if !(options.floor > 0.0) {
        return Err(Error::InvalidParameter("range floor must be positive".into()));
    }

    let levels: Vec<u32> = (j_min..=j_max).collect();
    let ranges: Vec<Vec<f64>> = exec::map_indices(levels.len(), |i| cell_ranges(&f, levels[i]));
    if ranges.iter().all(|r| r.iter().all(|&v| v == 0.0)) {
        return Err(Error::DegenerateRanges);
    }

    let mut warnings = Vec::new();
    if q_grid.iter().any(|&q| q < 0.0)
        && ranges.iter().any(|r| r.iter().any(|&v| v < options.floor))
    {
        warnings.push(format!(
            "some cell ranges were raised to {:e} for negative q",
            options.floor
        ));
    }

    let rows = exec::map_indices(q_grid.len(), |qi| {
        let q = q_grid[qi];
        ranges
            .iter()
            .map(|r| log_partition(r, q, options.floor))
            .collect::<Vec<f64>>()
    });
    let unnormalized_z = Matrix::from_rows(rows);
    let ln2 = std::f64::consts::LN_2;
    let normalized_z = Matrix::from_rows(
        unnormalized_z
            .iter_rows()
            .map(|row| {
                row.iter()
                    .zip(&levels)
                    .map(|(z, &j)| z - j as f64 * ln2)
                    .collect()
            })
            .collect(),
    );
    let log_scales: Vec<f64> = levels.iter().map(|&j| -(j as f64) * ln2).collect();
    Ok(OscillationStructure {
        normalized: fit_scaling(
            q_grid,
            log_scales.clone(),
            normalized_z,
            Convention::Normalized,
            warnings.clone(),
        )?,
        unnormalized: fit_scaling(
            q_grid,
            log_scales,
            unnormalized_z,
            Convention::Unnormalized,
            warnings,
        )?,
        levels,
    })
}

fn cell_ranges(f: &[f64], level: u32) -> Vec<f64> {
    let cells = 1usize << level;
    let last = f.len() - 1;
    let bound = |k: usize| k * last / cells;
    (0..cells)
        .map(|k| {
            let cell = &f[bound(k)..=bound(k + 1)];
            let (lo, hi) = cell
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
            hi - lo
        })
        .collect()
}

/// `log Σ R^q`; `q = 0` counts cells, zero ranges drop out for `q > 0` and are
/// floored for `q < 0`.
fn log_partition(ranges: &[f64], q: f64, floor: f64) -> f64 {
    if q == 0.0 {
        (ranges.len() as f64).ln()
    } else if q > 0.0 {
        log_sum_exp(ranges.iter().filter(|&&r| r > 0.0).map(|&r| q * r.ln()))
    } else {
        log_sum_exp(ranges.iter().map(|&r| q * r.max(floor).ln()))
    }
}
