//! The ΔL diagram: absolute deviations of the accumulated series from sliding
//! local linear fits.
//!
//! For every segment size `s` and every segment of `s` consecutive points, a
//! least-squares line `L` is fitted and each member `j` collects the squared
//! deviation `Δ² = (z_j − L_j)²`. Then
//!
//! ```text
//! E(j, s) = sqrt( (1/m_j) Σ_{segments ∋ j} Δ² )      F(s) = (1/T) Σ_j E(j, s)
//! ```
//!
//! where `m_j` counts the segments containing `j` (`m_j = s` away from the
//! edges). The segment centred at `t` spans `t − (s−1)/2 ..= t + (s−1)/2` for
//! odd `s` and `t − s/2 ..= t + s/2 − 1` for even `s`.

use serde::{Deserialize, Serialize};

use crate::{exec, profile, Centering, Error, Matrix, Result, TimeSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaLDiagram {
    /// `2 ..= ⌊T/4⌋`.
    pub segment_sizes: Vec<usize>,
    /// Rows follow `segment_sizes`, columns the locations `j`.
    pub e: Matrix<f64>,
    pub f: Vec<f64>,
    /// `m_j` per size, same layout as `e`.
    pub counts: Matrix<u32>,
}

/// ΔL diagram of the profile (`on_profile`) or of the raw values.
pub fn delta_l(series: &TimeSeries, on_profile: bool) -> Result<DeltaLDiagram> {
    let len = series.len();
    if len < 8 {
        return Err(Error::SeriesTooShort { needed: 8, got: len });
    }
    let z = if on_profile {
        profile(series, Centering::Mean).into_values()
    } else {
        series.values().to_vec()
    };
    delta_l_values(&z)
}

pub(crate) fn delta_l_values(z: &[f64]) -> Result<DeltaLDiagram> {
    let len = z.len();
    if len < 8 {
        return Err(Error::SeriesTooShort { needed: 8, got: len });
    }
    let sizes: Vec<usize> = (2..=len / 4).collect();
    let rows = exec::map_indices(sizes.len(), |i| size_row(z, sizes[i]));
    let mut e_rows = Vec::with_capacity(rows.len());
    let mut c_rows = Vec::with_capacity(rows.len());
    let mut f = Vec::with_capacity(rows.len());
    for (e, c) in rows {
        f.push(e.iter().sum::<f64>() / len as f64);
        e_rows.push(e);
        c_rows.push(c);
    }
    Ok(DeltaLDiagram {
        segment_sizes: sizes,
        e: Matrix::from_rows(e_rows),
        f,
        counts: Matrix::from_rows(c_rows),
    })
}

/// `E(·, s)` and `m_·` for one segment size. Segments are enumerated by their
/// first index; every window of `s` points that fits inside the series is the
/// segment of exactly one centre.
fn size_row(z: &[f64], s: usize) -> (Vec<f64>, Vec<u32>) {
    let len = z.len();
    let mut sum_sq = vec![0.0; len];
    let mut counts = vec![0u32; len];
    // Abscissae centred on the segment midpoint: u_i = i − (s−1)/2.
    let mid = (s as f64 - 1.0) / 2.0;
    let suu: f64 = (0..s).map(|i| (i as f64 - mid).powi(2)).sum();
    for a in 0..=len - s {
        let seg = &z[a..a + s];
        let mean = seg.iter().sum::<f64>() / s as f64;
        let slope = seg
            .iter()
            .enumerate()
            .map(|(i, v)| (i as f64 - mid) * (v - mean))
            .sum::<f64>()
            / suu;
        for (i, v) in seg.iter().enumerate() {
            let r = v - mean - slope * (i as f64 - mid);
            sum_sq[a + i] += r * r;
            counts[a + i] += 1;
        }
    }
    let e = sum_sq
        .iter()
        .zip(&counts)
        .map(|(&ss, &m)| (ss / m as f64).sqrt())
        .collect();
    (e, counts)
}
