//! Mother wavelets and the continuous wavelet transform.
//!
//! The transform is the Riemann sum
//!
//! ```text
//! W(s, l) = (h / √s) Σ_t x_t ψ*((t − l) / s)
//! ```
//!
//! with `t`, `l` and `s` in samples and the series zero-padded outside
//! `[0, T)`. Gaussian-family wavelets are truncated at `|u| ≤ 7`, where the
//! envelope is below `3e-11`; the cone of influence uses the same support, so
//! a coefficient outside it sees no padding at all.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::regression::log_space;
use crate::{exec, fft, Error, Matrix, Result, TimeSeries};

/// Centre frequency of the Morlet wavelet.
pub const MORLET_OMEGA0: f64 = 6.0;

/// Half-width of the truncated support of Gaussian-family wavelets.
pub const GAUSSIAN_SUPPORT: f64 = 7.0;

/// Kernels up to this many taps are applied directly; longer ones via FFT.
const DIRECT_TAPS: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wavelet {
    /// `−t e^{−t²/2}`, first derivative of a Gaussian.
    GaussianWave,
    /// `(1 − t²) e^{−t²/2}`.
    MexicanHat,
    /// `+1` on `[0, ½)`, `−1` on `[½, 1)`.
    Haar,
    /// `π^{−1/4} e^{iω₀t} e^{−t²/2}`, `ω₀ = 6`, without admissibility correction.
    Morlet,
}

impl Wavelet {
    pub const ALL: [Wavelet; 4] = [
        Wavelet::GaussianWave,
        Wavelet::MexicanHat,
        Wavelet::Haar,
        Wavelet::Morlet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Wavelet::GaussianWave => "gaussian_wave",
            Wavelet::MexicanHat => "mexican_hat",
            Wavelet::Haar => "haar",
            Wavelet::Morlet => "morlet",
        }
    }

    pub fn eval(self, t: f64) -> Complex64 {
        match self {
            Wavelet::GaussianWave => Complex64::new(-t * (-t * t / 2.0).exp(), 0.0),
            Wavelet::MexicanHat => Complex64::new((1.0 - t * t) * (-t * t / 2.0).exp(), 0.0),
            Wavelet::Haar => Complex64::new(
                if (0.0..0.5).contains(&t) {
                    1.0
                } else if (0.5..1.0).contains(&t) {
                    -1.0
                } else {
                    0.0
                },
                0.0,
            ),
            Wavelet::Morlet => {
                Complex64::from_polar(PI.powf(-0.25) * (-t * t / 2.0).exp(), MORLET_OMEGA0 * t)
            }
        }
    }

    /// Number of vanishing moments `n` (`∫ t^k ψ = 0` for `k < n`).
    pub fn vanishing_moments(self) -> u32 {
        match self {
            Wavelet::MexicanHat => 2,
            _ => 1,
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Wavelet::Morlet)
    }

    /// Support `[a, b]` in wavelet units (truncated for Gaussian families).
    pub fn support(self) -> (f64, f64) {
        match self {
            Wavelet::Haar => (0.0, 1.0),
            _ => (-GAUSSIAN_SUPPORT, GAUSSIAN_SUPPORT),
        }
    }

    /// Closed-form `∫|ψ|² dt`.
    pub fn energy(self) -> f64 {
        match self {
            Wavelet::GaussianWave => PI.sqrt() / 2.0,
            Wavelet::MexicanHat => 3.0 * PI.sqrt() / 4.0,
            Wavelet::Haar | Wavelet::Morlet => 1.0,
        }
    }

    /// Conjugated kernel taps `ψ*(j/s)` for integer offsets `j`, returned with
    /// the first offset. Haar taps integrate the wavelet over each sample cell
    /// so that they sum to exactly zero at any scale.
    fn taps(self, scale: f64) -> (i64, Vec<Complex64>) {
        let (a, b) = self.support();
        match self {
            Wavelet::Haar => {
                let lo = (a * scale - 0.5).floor() as i64;
                let hi = (b * scale + 0.5).ceil() as i64;
                let taps = (lo..=hi)
                    .map(|j| {
                        let u0 = (j as f64 - 0.5) / scale;
                        let u1 = (j as f64 + 0.5) / scale;
                        Complex64::new(scale * (haar_antiderivative(u1) - haar_antiderivative(u0)), 0.0)
                    })
                    .collect();
                (lo, taps)
            }
            _ => {
                let lo = (a * scale).ceil() as i64;
                let hi = (b * scale).floor() as i64;
                let taps = (lo..=hi).map(|j| self.eval(j as f64 / scale).conj()).collect();
                (lo, taps)
            }
        }
    }
}

fn haar_antiderivative(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else if u < 0.5 {
        u
    } else {
        1.0 - u
    }
}

impl FromStr for Wavelet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_wavelet(s)
    }
}

impl std::fmt::Display for Wavelet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn make_wavelet(name: &str) -> Result<Wavelet> {
    let key = name.trim().to_ascii_lowercase().replace(['-', ' '], "_");
    Wavelet::ALL
        .into_iter()
        .find(|w| w.name() == key)
        .ok_or_else(|| Error::UnknownWavelet(name.to_string()))
}

/// Coefficients `W(s, l)` on a scale × location grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletField {
    /// Strictly increasing, in samples.
    pub scales: Vec<f64>,
    /// Sample indices `0 .. T`.
    pub locations: Vec<f64>,
    pub coefficients: Matrix<Complex64>,
    pub wavelet: Wavelet,
    /// Per location, the largest scale whose support stays inside the data.
    /// Coefficients at larger scales are inside the cone of influence.
    pub coi: Vec<f64>,
}

impl WaveletField {
    pub fn n_scales(&self) -> usize {
        self.scales.len()
    }

    pub fn n_locations(&self) -> usize {
        self.locations.len()
    }

    /// Whether `W(scales[si], l)` is free of boundary effects.
    pub fn is_trusted(&self, si: usize, l: usize) -> bool {
        self.scales[si] <= self.coi[l]
    }

    pub fn modulus(&self) -> Matrix<f64> {
        self.coefficients.map(|c| c.norm())
    }

    pub fn same_grid(&self, other: &WaveletField) -> Result<()> {
        if self.wavelet != other.wavelet {
            return Err(Error::GridMismatch("wavelet"));
        }
        if self.scales != other.scales {
            return Err(Error::GridMismatch("scales"));
        }
        if self.locations != other.locations {
            return Err(Error::GridMismatch("locations"));
        }
        Ok(())
    }
}

/// 64 log-spaced scales from 2 to `T/4` samples.
pub fn default_scales(len: usize) -> Vec<f64> {
    let hi = (len as f64 / 4.0).max(2.5);
    log_space(2.0, hi, 64)
}

fn cone_of_influence(wavelet: Wavelet, len: usize) -> Vec<f64> {
    let (a, b) = wavelet.support();
    let last = (len - 1) as f64;
    (0..len)
        .map(|l| {
            let l = l as f64;
            let left = if a < 0.0 { l / -a } else { f64::INFINITY };
            let right = if b > 0.0 { (last - l) / b } else { f64::INFINITY };
            left.min(right)
        })
        .collect()
}

pub fn cwt(series: &TimeSeries, wavelet: Wavelet, scales: Option<&[f64]>) -> Result<WaveletField> {
    let len = series.len();
    if len < 8 {
        return Err(Error::SeriesTooShort { needed: 8, got: len });
    }
    let scales = match scales {
        Some(s) => s.to_vec(),
        None => default_scales(len),
    };
    if scales.is_empty() {
        return Err(Error::EmptyGrid("scale"));
    }
    if let Some(&bad) = scales.iter().find(|&&s| !(s > 0.0 && s <= len as f64)) {
        return Err(Error::InvalidParameter(format!(
            "scales must lie in (0, {len}], got {bad}"
        )));
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("scales must be strictly increasing".into()));
    }

    let x = series.values();
    let taps: Vec<(i64, Vec<Complex64>)> = scales.iter().map(|&s| wavelet.taps(s)).collect();

    // Signal spectra shared by every scale that needs the same FFT length.
    let mut spectra: HashMap<usize, Vec<Complex64>> = HashMap::new();
    for (_, k) in &taps {
        if k.len() > DIRECT_TAPS {
            let n = fft_len(len, k.len());
            spectra.entry(n).or_insert_with(|| {
                let mut buf = vec![Complex64::new(0.0, 0.0); n];
                for (b, &v) in buf.iter_mut().zip(x) {
                    b.re = v;
                }
                fft::radix2_in_place(&mut buf, false);
                buf
            });
        }
    }

    let h = series.step();
    let rows = exec::map_indices(scales.len(), |si| {
        let (lo, k) = &taps[si];
        let mut row = if k.len() > DIRECT_TAPS {
            correlate_fft(&spectra[&fft_len(len, k.len())], len, *lo, k)
        } else {
            correlate_direct(x, *lo, k)
        };
        let norm = h / scales[si].sqrt();
        for c in &mut row {
            *c *= norm;
            if !wavelet.is_complex() {
                c.im = 0.0;
            }
        }
        row
    });

    Ok(WaveletField {
        scales,
        locations: (0..len).map(|l| l as f64).collect(),
        coefficients: Matrix::from_rows(rows),
        wavelet,
        coi: cone_of_influence(wavelet, len),
    })
}

fn fft_len(len: usize, taps: usize) -> usize {
    (len + taps).next_power_of_two()
}

/// `y[l] = Σ_j x[l + j] k[j − lo]`, zero outside `[0, len)`.
fn correlate_direct(x: &[f64], lo: i64, k: &[Complex64]) -> Vec<Complex64> {
    let n = x.len() as i64;
    (0..n)
        .map(|l| {
            let first = (l + lo).max(0);
            let last = (l + lo + k.len() as i64 - 1).min(n - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in first..=last {
                acc += k[(t - l - lo) as usize] * x[t as usize];
            }
            acc
        })
        .collect()
}

/// Same correlation through a circular convolution with the reversed kernel.
fn correlate_fft(signal_spectrum: &[Complex64], len: usize, lo: i64, k: &[Complex64]) -> Vec<Complex64> {
    let n = signal_spectrum.len();
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    for (i, &tap) in k.iter().enumerate() {
        let j = lo + i as i64;
        g[(-j).rem_euclid(n as i64) as usize] = tap;
    }
    fft::radix2_in_place(&mut g, false);
    for (gi, xi) in g.iter_mut().zip(signal_spectrum) {
        *gi *= xi;
    }
    fft::radix2_in_place(&mut g, true);
    let inv = 1.0 / n as f64;
    g.truncate(len);
    for v in &mut g {
        *v *= inv;
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalogramKind {
    /// `|W|²`.
    #[default]
    Energy,
    /// `|W|`.
    Modulus,
}

pub fn scalogram(field: &WaveletField, kind: ScalogramKind) -> Matrix<f64> {
    match kind {
        ScalogramKind::Energy => field.coefficients.map(|c| c.norm_sqr()),
        ScalogramKind::Modulus => field.coefficients.map(|c| c.norm()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ts(v: Vec<f64>) -> TimeSeries {
        TimeSeries::new(v).unwrap()
    }

    fn noise(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random::<f64>() - 0.5).collect()
    }

    /// Trapezoid rule on a fine grid over `[−8, 8]`.
    fn integrate(f: impl Fn(f64) -> f64) -> f64 {
        let n = 320_000;
        let dx = 16.0 / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * f(-8.0 + i as f64 * dx)
            })
            .sum::<f64>()
            * dx
    }

    #[test]
    fn closed_forms() {
        assert_eq!(Wavelet::MexicanHat.eval(0.0).re, 1.0);
        assert_eq!(Wavelet::Haar.eval(0.25).re, 1.0);
        assert_eq!(Wavelet::Haar.eval(0.75).re, -1.0);
        assert_eq!(Wavelet::Haar.eval(1.0).re, 0.0);
        assert!((Wavelet::Morlet.eval(0.0).re - PI.powf(-0.25)).abs() < 1e-15);
        assert_eq!(make_wavelet("Mexican-Hat").unwrap(), Wavelet::MexicanHat);
        assert!(matches!(make_wavelet("db4"), Err(Error::UnknownWavelet(_))));
    }

    #[test]
    fn finite_energy_and_zero_mean() {
        for w in [Wavelet::GaussianWave, Wavelet::MexicanHat, Wavelet::Morlet] {
            let e = integrate(|t| w.eval(t).norm_sqr());
            assert!((e - w.energy()).abs() < 1e-6 * w.energy(), "{w}: {e}");
        }
        for w in [Wavelet::GaussianWave, Wavelet::MexicanHat] {
            assert!(integrate(|t| w.eval(t).re).abs() < 1e-8);
        }
        // Haar: exact integrals on its two halves.
        let haar_mean = 0.5 * 1.0 + 0.5 * -1.0;
        assert_eq!(haar_mean, 0.0);
        let (_, taps) = Wavelet::Haar.taps(3.3);
        assert!(taps.iter().map(|c| c.re).sum::<f64>().abs() < 1e-14);
    }

    #[test]
    fn input_validation() {
        assert!(matches!(cwt(&ts(vec![1.0; 7]), Wavelet::Haar, None), Err(Error::SeriesTooShort { .. })));
        let s = ts(vec![1.0; 16]);
        assert!(cwt(&s, Wavelet::Haar, Some(&[0.0, 1.0])).is_err());
        assert!(cwt(&s, Wavelet::Haar, Some(&[2.0, 1.0])).is_err());
        assert!(cwt(&s, Wavelet::Haar, Some(&[17.0])).is_err());
        assert!(cwt(&s, Wavelet::Haar, Some(&[])).is_err());
    }

    #[test]
    fn default_grid() {
        let f = cwt(&ts(noise(1, 256)), Wavelet::MexicanHat, None).unwrap();
        assert_eq!(f.n_scales(), 64);
        assert_eq!(f.scales[0], 2.0);
        assert_eq!(f.scales[63], 64.0);
        assert_eq!(f.n_locations(), 256);
    }

    #[test]
    fn zero_series_gives_zero_field() {
        for w in Wavelet::ALL {
            let f = cwt(&ts(vec![0.0; 300]), w, None).unwrap();
            assert!(f.coefficients.as_slice().iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn fft_path_matches_direct() {
        let x = noise(5, 700);
        for w in Wavelet::ALL {
            for &s in &[9.0, 40.0, 130.0] {
                let (lo, k) = w.taps(s);
                let direct = correlate_direct(&x, lo, &k);
                let n = fft_len(x.len(), k.len());
                let mut buf = vec![Complex64::new(0.0, 0.0); n];
                for (b, &v) in buf.iter_mut().zip(&x) {
                    b.re = v;
                }
                fft::radix2_in_place(&mut buf, false);
                let fast = correlate_fft(&buf, x.len(), lo, &k);
                let scale = direct.iter().map(|c| c.norm()).fold(0.0, f64::max);
                for (a, b) in direct.iter().zip(&fast) {
                    assert!((a - b).norm() <= 1e-12 * scale, "{w} s={s}");
                }
            }
        }
    }

    #[test]
    fn matches_riemann_sum_definition() {
        let x = noise(9, 200);
        let scales = [2.0, 5.5, 30.0];
        for w in [Wavelet::GaussianWave, Wavelet::MexicanHat, Wavelet::Morlet] {
            let f = cwt(&ts(x.clone()), w, Some(&scales)).unwrap();
            for (si, &s) in scales.iter().enumerate() {
                for &l in &[0usize, 77, 199] {
                    let mut direct = Complex64::new(0.0, 0.0);
                    for (t, &v) in x.iter().enumerate() {
                        let u = (t as f64 - l as f64) / s;
                        if u.abs() <= GAUSSIAN_SUPPORT {
                            direct += v * w.eval(u).conj();
                        }
                    }
                    direct /= s.sqrt();
                    assert!((f.coefficients.get(si, l) - direct).norm() < 1e-12, "{w} s={s} l={l}");
                }
            }
        }
    }

    #[test]
    fn constants_are_annihilated() {
        let c = 3.7;
        for w in [Wavelet::GaussianWave, Wavelet::MexicanHat, Wavelet::Haar] {
            let f = cwt(&ts(vec![c; 512]), w, None).unwrap();
            for si in 0..f.n_scales() {
                for l in 0..f.n_locations() {
                    if f.is_trusted(si, l) {
                        let bound = 1e-8 * c * f.scales[si].sqrt();
                        assert!(f.coefficients.get(si, l).norm() < bound, "{w} s={} l={l}", f.scales[si]);
                    }
                }
            }
        }
    }

    #[test]
    fn coi_shape() {
        let f = cwt(&ts(noise(2, 100)), Wavelet::MexicanHat, None).unwrap();
        assert_eq!(f.coi[0], 0.0);
        assert!((f.coi[49] - 49.0 / 7.0).abs() < 1e-12);
        let h = cwt(&ts(noise(2, 100)), Wavelet::Haar, None).unwrap();
        assert_eq!(h.coi[0], 99.0);
        assert_eq!(h.coi[99], 0.0);
    }

    #[test]
    fn scalogram_of_real_field_squares() {
        let f = cwt(&ts(noise(4, 128)), Wavelet::MexicanHat, None).unwrap();
        let e = scalogram(&f, ScalogramKind::Energy);
        let m = scalogram(&f, ScalogramKind::Modulus);
        for si in 0..f.n_scales() {
            for l in 0..f.n_locations() {
                let re = f.coefficients.get(si, l).re;
                assert!((e.get(si, l) - re * re).abs() <= 1e-12 * re.abs().max(1.0));
                assert!((m.get(si, l) - re.abs()).abs() <= 1e-12);
            }
        }
        let zero = cwt(&ts(vec![0.0; 64]), Wavelet::Morlet, None).unwrap();
        assert!(scalogram(&zero, ScalogramKind::Energy).as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn morlet_sine_gives_one_band() {
        let n = 1024;
        let period = 32.0;
        let x: Vec<f64> = (0..n).map(|t| (2.0 * PI * t as f64 / period).sin()).collect();
        let f = cwt(&ts(x), Wavelet::Morlet, None).unwrap();
        let e = scalogram(&f, ScalogramKind::Energy);
        let trusted = (0..f.n_scales())
            .take_while(|&si| (300..700).all(|l| f.is_trusted(si, l)))
            .count();
        let row_sums: Vec<f64> = (0..trusted)
            .map(|si| (300..700).map(|l| e.get(si, l)).sum())
            .collect();
        let best = row_sums
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        // Ridge of a Morlet wavelet: s* = ω₀ P / 2π.
        let expected = MORLET_OMEGA0 * period / (2.0 * PI);
        let ratio = f.scales[1] / f.scales[0];
        assert!((f.scales[best] / expected).ln().abs() <= ratio.ln() * 1.5);
        // Unique peak: energy falls off monotonically on both sides.
        assert!(row_sums[..best].windows(2).all(|w| w[1] > w[0]));
        assert!(row_sums[best..].windows(2).all(|w| w[1] < w[0]));
    }
}
