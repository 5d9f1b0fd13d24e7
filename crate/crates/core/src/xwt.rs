//! Comparing two series in wavelet space.
//!
//! All three measures are elementwise over a shared scale × location grid:
//!
//! * modulus difference `|W_x − W_y|`
//! * phase difference `arg W_x − arg W_y`, wrapped to `(−π, π]`
//! * cross-wavelet transform `W_x* · W_y = |W_x||W_y| e^{i(φ_y − φ_x)}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cwt::WaveletField;
use crate::spectral::wrap_phase;
use crate::{Error, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossKind {
    DiffMod,
    PhaseDiff,
    CrWt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossField {
    pub scales: Vec<f64>,
    pub locations: Vec<f64>,
    /// Real-valued kinds keep a zero imaginary part.
    pub values: Matrix<Complex64>,
    pub kind: CrossKind,
}

impl CrossField {
    fn from(wx: &WaveletField, values: Matrix<Complex64>, kind: CrossKind) -> Self {
        Self {
            scales: wx.scales.clone(),
            locations: wx.locations.clone(),
            values,
            kind,
        }
    }

    pub fn modulus(&self) -> Matrix<f64> {
        self.values.map(|c| c.norm())
    }

    pub fn real(&self) -> Matrix<f64> {
        self.values.map(|c| c.re)
    }

    /// `arg` of every value, wrapped to `(−π, π]`.
    pub fn phase(&self) -> Matrix<f64> {
        self.values.map(|c| wrap_phase(c.arg()))
    }
}

pub fn diffmod(wx: &WaveletField, wy: &WaveletField) -> Result<CrossField> {
    wx.same_grid(wy)?;
    let values = wx
        .coefficients
        .zip_map(&wy.coefficients, |a, b| Complex64::new((a - b).norm(), 0.0));
    Ok(CrossField::from(wx, values, CrossKind::DiffMod))
}

pub fn phase_diff(wx: &WaveletField, wy: &WaveletField) -> Result<CrossField> {
    if !wx.wavelet.is_complex() || !wy.wavelet.is_complex() {
        return Err(Error::PhaseRequiresComplex);
    }
    wx.same_grid(wy)?;
    let values = wx
        .coefficients
        .zip_map(&wy.coefficients, |a, b| Complex64::new(wrap_phase(a.arg() - b.arg()), 0.0));
    Ok(CrossField::from(wx, values, CrossKind::PhaseDiff))
}

pub fn crwt(wx: &WaveletField, wy: &WaveletField) -> Result<CrossField> {
    wx.same_grid(wy)?;
    let values = wx.coefficients.zip_map(&wy.coefficients, |a, b| a.conj() * b);
    Ok(CrossField::from(wx, values, CrossKind::CrWt))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::cwt::{cwt, scalogram, ScalogramKind, Wavelet};
    use crate::TimeSeries;
    use rand::{Rng, SeedableRng};

    fn field(x: Vec<f64>, w: Wavelet) -> WaveletField {
        cwt(&TimeSeries::new(x).unwrap(), w, None).unwrap()
    }

    fn noise(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random::<f64>() - 0.5).collect()
    }

    #[test]
    fn self_comparisons() {
        let w = field(noise(1, 256), Wavelet::Morlet);
        assert!(diffmod(&w, &w).unwrap().values.as_slice().iter().all(|c| c.norm() == 0.0));
        assert!(phase_diff(&w, &w).unwrap().values.as_slice().iter().all(|c| c.norm() == 0.0));
        let c = crwt(&w, &w).unwrap();
        let energy = scalogram(&w, ScalogramKind::Energy);
        for (v, e) in c.values.as_slice().iter().zip(energy.as_slice()) {
            assert!((v.re - e).abs() <= 1e-12 * e.max(1.0));
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn against_zero_field() {
        let w = field(noise(2, 128), Wavelet::MexicanHat);
        let z = field(vec![0.0; 128], Wavelet::MexicanHat);
        let d = diffmod(&w, &z).unwrap();
        for (v, c) in d.values.as_slice().iter().zip(w.coefficients.as_slice()) {
            assert_eq!(v.re, c.norm());
        }
        assert!(crwt(&w, &z).unwrap().values.as_slice().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = field(noise(3, 128), Wavelet::MexicanHat);
        let b = field(noise(3, 128), Wavelet::GaussianWave);
        let c = field(noise(3, 256), Wavelet::MexicanHat);
        assert!(matches!(diffmod(&a, &b), Err(Error::GridMismatch("wavelet"))));
        assert!(crwt(&a, &c).is_err());
        let err = phase_diff(&a, &a).unwrap_err();
        assert_eq!(err.to_string(), "phase requires complex wavelet");
    }

    #[test]
    fn quarter_period_shift_gives_quarter_turn() {
        let n = 1024;
        let period = 40.0;
        let x: Vec<f64> = (0..n).map(|t| (2.0 * PI * t as f64 / period).sin()).collect();
        let y: Vec<f64> = (0..n).map(|t| (2.0 * PI * (t as f64 - period / 4.0) / period).sin()).collect();
        let (wx, wy) = (field(x, Wavelet::Morlet), field(y, Wavelet::Morlet));
        let pd = phase_diff(&wx, &wy).unwrap();
        let ridge = (0..wx.n_scales())
            .max_by(|&a, &b| wx.coefficients.get(a, n / 2).norm().total_cmp(&wx.coefficients.get(b, n / 2).norm()))
            .unwrap();
        for l in 300..700 {
            let v = pd.values.get(ridge, l).re;
            assert!((v.abs() - PI / 2.0).abs() < 0.1, "l={l}: {v}");
        }
    }

    #[test]
    fn amplitude_doubled_sine_diffmod_tracks_modulus() {
        let n = 512;
        let x: Vec<f64> = (0..n).map(|t| (2.0 * PI * t as f64 / 24.0).sin()).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let (wx, wy) = (field(x, Wavelet::MexicanHat), field(y, Wavelet::MexicanHat));
        let d = diffmod(&wx, &wy).unwrap();
        for si in 0..wx.n_scales() {
            for l in 0..n {
                let expect = (wx.coefficients.get(si, l) - wy.coefficients.get(si, l)).norm();
                assert_eq!(d.values.get(si, l).re, expect);
                assert!((d.values.get(si, l).re - wx.coefficients.get(si, l).norm()).abs() < 1e-12);
            }
        }
    }
}
