//! Pointwise Hölder exponents from the decay of wavelet coefficients.
//!
//! Near a singularity of exponent `h` the L1-normalised coefficients in the
//! cone `|l′ − l| ≤ s` decay like `s^h` as `s → 0`, provided the wavelet has
//! more than `h` vanishing moments; otherwise they decay like `s^n` and the
//! estimate saturates at `n`.

use serde::{Deserialize, Serialize};

use crate::cwt::WaveletField;
use crate::regression::fit_line;
use crate::{Error, Result};

/// Number of small scales used by the regression.
pub const HOLDER_SCALES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolderEstimate {
    /// `None` when some coefficient cone is identically zero.
    pub exponent: Option<f64>,
    pub r_squared: f64,
    pub scales_used: Vec<f64>,
    /// The estimate reached `vanishing_moments − 0.1`: it reflects the
    /// wavelet rather than the signal.
    pub moment_saturated: bool,
    pub zero_coefficients: bool,
}

/// Slope of `log max_{|l′−l| ≤ s} |W(s, l′)|` against `log s` over the
/// smallest [`HOLDER_SCALES`] scales, converted to the L1 normalisation.
pub fn holder_at_point(field: &WaveletField, location: usize) -> Result<HolderEstimate> {
    let n_loc = field.n_locations();
    if location >= n_loc {
        return Err(Error::InvalidParameter(format!(
            "location {location} outside 0..{n_loc}"
        )));
    }
    if field.n_scales() < HOLDER_SCALES {
        return Err(Error::TooFewPoints {
            needed: HOLDER_SCALES,
            got: field.n_scales(),
        });
    }
    if let Some(si) = (0..HOLDER_SCALES).find(|&si| !field.is_trusted(si, location)) {
        return Err(Error::InvalidParameter(format!(
            "location {location} lies in the cone of influence at scale {}",
            field.scales[si]
        )));
    }
    let scales: Vec<f64> = field.scales[..HOLDER_SCALES].to_vec();
    let cone_max: Vec<f64> = scales
        .iter()
        .enumerate()
        .map(|(si, &s)| {
            let r = s.ceil() as usize;
            let lo = location.saturating_sub(r);
            let hi = (location + r).min(n_loc - 1);
            field.coefficients.row(si)[lo..=hi]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    if cone_max.contains(&0.0) {
        return Ok(HolderEstimate {
            exponent: None,
            r_squared: 0.0,
            scales_used: scales,
            moment_saturated: false,
            zero_coefficients: true,
        });
    }
    let xs: Vec<f64> = scales.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = cone_max.iter().map(|m| m.ln()).collect();
    let fit = fit_line(&xs, &ys).ok_or(Error::InvalidParameter("scales must differ".into()))?;
    let h = fit.slope - 0.5;
    Ok(HolderEstimate {
        exponent: Some(h),
        r_squared: fit.r_squared,
        scales_used: scales,
        moment_saturated: h >= field.wavelet.vanishing_moments() as f64 - 0.1,
        zero_coefficients: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwt::{cwt, Wavelet};
    use crate::regression::log_space;
    use crate::TimeSeries;

    // Scales of several samples keep the lattice small against the wavelet.
    fn field(values: Vec<f64>, wavelet: Wavelet) -> WaveletField {
        let s = TimeSeries::new(values).unwrap();
        cwt(&s, wavelet, Some(&log_space(8.0, 64.0, 16))).unwrap()
    }

    #[test]
    fn cusp() {
        let n = 4096;
        let t0 = 2048;
        let x = (0..n).map(|t| (t as f64 - t0 as f64).abs().sqrt()).collect();
        let est = holder_at_point(&field(x, Wavelet::MexicanHat), t0).unwrap();
        let h = est.exponent.unwrap();
        assert!((h - 0.5).abs() <= 0.1, "{h}");
        assert!(!est.moment_saturated);
    }

    #[test]
    fn step_with_every_wavelet() {
        let n = 1024;
        let x: Vec<f64> = (0..n).map(|t| if t < 512 { 0.0 } else { 1.0 }).collect();
        for w in Wavelet::ALL {
            let est = holder_at_point(&field(x.clone(), w), 512).unwrap();
            let h = est.exponent.unwrap();
            assert!(h.abs() <= 0.1, "{}: {h}", w.name());
        }
    }

    #[test]
    fn smooth_point_saturates() {
        let x = (0..1024).map(|t| (2.0 * std::f64::consts::PI * t as f64 / 200.0).sin()).collect();
        let est = holder_at_point(&field(x, Wavelet::GaussianWave), 437).unwrap();
        assert!(est.moment_saturated, "{:?}", est.exponent);
        assert!((est.exponent.unwrap() - 1.0).abs() < 0.2);
    }

    #[test]
    fn zero_signal_is_flagged() {
        let est = holder_at_point(&field(vec![0.0; 512], Wavelet::MexicanHat), 256).unwrap();
        assert!(est.zero_coefficients);
        assert_eq!(est.exponent, None);
    }

    #[test]
    fn edge_location_rejected() {
        assert!(holder_at_point(&field(vec![1.0; 256], Wavelet::MexicanHat), 3).is_err());
        assert!(holder_at_point(&field(vec![1.0; 256], Wavelet::MexicanHat), 999).is_err());
    }
}
