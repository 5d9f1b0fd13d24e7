//! One-sided Fourier spectrum and the Gabor (Gaussian-windowed) transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{exec, fft, Error, Matrix, Result, TimeSeries};

/// One-sided spectrum: bins `m = 0 ..= N/2` at frequency `m / (N h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    /// `|X_m|`, unscaled.
    pub amplitudes: Vec<f64>,
    /// `arg X_m` in `(−π, π]`.
    pub phases: Vec<f64>,
    /// Full two-sided coefficients, kept for the inverse transform.
    pub coefficients: Vec<Complex64>,
}

impl Spectrum {
    /// Amplitudes scaled for display: `2|X_m|/N`, with `|X_0|/N` at DC (and at
    /// Nyquist for even N), so a sine of amplitude `a` shows as `a`.
    pub fn scaled_amplitudes(&self) -> Vec<f64> {
        let n = self.coefficients.len();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(m, &a)| {
                if m == 0 || 2 * m == n {
                    a / n as f64
                } else {
                    2.0 * a / n as f64
                }
            })
            .collect()
    }

    /// Indices of bins whose amplitude exceeds `fraction` of the largest one.
    pub fn dominant_bins(&self, fraction: f64) -> Vec<usize> {
        let max = self.amplitudes.iter().copied().fold(0.0, f64::max);
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a > fraction * max)
            .map(|(m, _)| m)
            .collect()
    }

    /// Reconstructs the sampled values.
    pub fn inverse(&self) -> Vec<f64> {
        fft::inverse(&self.coefficients).iter().map(|c| c.re).collect()
    }
}

/// Maps an angle onto `(−π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

pub fn dft(series: &TimeSeries) -> Result<Spectrum> {
    let n = series.len();
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let coefficients = fft::forward_real(series.values());
    let half = n / 2;
    let frequencies = (0..=half)
        .map(|m| m as f64 / (n as f64 * series.step()))
        .collect();
    let amplitudes = coefficients[..=half].iter().map(|c| c.norm()).collect();
    let phases = coefficients[..=half]
        .iter()
        .map(|c| wrap_phase(c.arg()))
        .collect();
    Ok(Spectrum {
        frequencies,
        amplitudes,
        phases,
        coefficients,
    })
}

/// Coefficients `G(ν, l, s)` on a frequency × location grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaborField {
    /// Cycles per unit time.
    pub frequencies: Vec<f64>,
    /// Sample indices of the window centres.
    pub locations: Vec<f64>,
    /// Window width `s` in samples.
    pub window_width: f64,
    pub coefficients: Matrix<Complex64>,
}

/// DFT bin frequencies `m / (N h)` for `m = 0 ..= N/2`.
pub fn default_gabor_frequencies(series: &TimeSeries) -> Vec<f64> {
    let n = series.len();
    (0..=n / 2)
        .map(|m| m as f64 / (n as f64 * series.step()))
        .collect()
}

pub fn default_gabor_locations(series: &TimeSeries) -> Vec<f64> {
    (0..series.len()).map(|i| i as f64).collect()
}

/// `T / 10` samples.
pub fn default_window_width(series: &TimeSeries) -> f64 {
    series.len() as f64 / 10.0
}

/// `G(ν, l, s) = h Σ_t x_t e^{−(t−l)²/s²} e^{−i2πν t h}`, with `t`, `l` and `s`
/// in samples and `ν` in cycles per unit time.
pub fn gabor(
    series: &TimeSeries,
    frequencies: &[f64],
    locations: &[f64],
    window_width: f64,
) -> Result<GaborField> {
    if frequencies.is_empty() {
        return Err(Error::EmptyGrid("frequency"));
    }
    if locations.is_empty() {
        return Err(Error::EmptyGrid("location"));
    }
    if !(window_width > 0.0 && window_width.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "window width must be positive, got {window_width}"
        )));
    }
    let x = series.values();
    let h = series.step();
    let inv_s2 = 1.0 / (window_width * window_width);
    let rows = exec::map_indices(frequencies.len(), |fi| {
        let nu = frequencies[fi];
        let carrier: Vec<Complex64> = (0..x.len())
            .map(|t| x[t] * Complex64::from_polar(1.0, -2.0 * PI * nu * h * t as f64))
            .collect();
        locations
            .iter()
            .map(|&l| {
                let sum: Complex64 = carrier
                    .iter()
                    .enumerate()
                    .map(|(t, c)| {
                        let d = t as f64 - l;
                        c * (-d * d * inv_s2).exp()
                    })
                    .sum();
                sum * h
            })
            .collect::<Vec<_>>()
    });
    Ok(GaborField {
        frequencies: frequencies.to_vec(),
        locations: locations.to_vec(),
        window_width,
        coefficients: Matrix::from_rows(rows),
    })
}
