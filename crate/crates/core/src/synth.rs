//! Synthetic processes with known scaling behaviour.
//!
//! Randomness comes from ChaCha8 seeded with the generator's `seed` through
//! `SeedableRng::seed_from_u64`, and Gaussian draws from `rand_distr`'s
//! `StandardNormal`, so equal seeds give bit-identical output.
//!
//! | kind               | output                                                   |
//! |--------------------|----------------------------------------------------------|
//! | `white_noise`      | i.i.d. N(0, 1)                                           |
//! | `brownian`         | running sum of white noise (a random-walk path)          |
//! | `fbm`              | fractional Gaussian noise, i.e. fBm increments, with H*  |
//! | `binomial_cascade` | cell masses of a deterministic binomial measure          |
//!
//! `fbm` returns increments so that rescaled-range analysis applies directly;
//! the fBm path is their [`profile`](crate::profile).

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::series::{cumulative_sum, Centering};
use crate::{fft, Error, Result, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    WhiteNoise,
    Brownian,
    Fbm { hurst: f64 },
    BinomialCascade { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub length: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, length: usize, seed: u64) -> Self {
        Self { kind, length, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidParameter("length must be positive".into()));
        }
        match self.kind {
            GeneratorKind::Fbm { hurst } => {
                if !(hurst > 0.0 && hurst < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "fbm needs 0 < H* < 1, got {hurst}"
                    )));
                }
                if !fft::is_power_of_two(self.length) {
                    return Err(Error::InvalidParameter(format!(
                        "fbm length must be a power of two, got {}",
                        self.length
                    )));
                }
            }
            GeneratorKind::BinomialCascade { p } => {
                if !(p > 0.0 && p < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "cascade needs 0 < p < 1, got {p}"
                    )));
                }
                if !fft::is_power_of_two(self.length) {
                    return Err(Error::InvalidParameter(format!(
                        "cascade length must be a power of two, got {}",
                        self.length
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.length;
    let (values, label) = match spec.kind {
        GeneratorKind::WhiteNoise => (gaussian(&mut rng, n), "white_noise".to_string()),
        GeneratorKind::Brownian => (
            cumulative_sum(&gaussian(&mut rng, n), Centering::None),
            "brownian".to_string(),
        ),
        GeneratorKind::Fbm { hurst } => (fgn(&mut rng, n, hurst), format!("fbm_h{hurst}")),
        GeneratorKind::BinomialCascade { p } => (binomial_cascade(p, n), format!("cascade_p{p}")),
    };
    Ok(TimeSeries::new(values)?.with_label(label))
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Autocovariance of unit-variance fractional Gaussian noise.
pub fn fgn_autocovariance(hurst: f64, k: usize) -> f64 {
    let k = k as f64;
    let e = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).abs().powf(e))
}

/// Circulant embedding (Davies–Harte) of the fGn covariance on `2n` points.
fn fgn(rng: &mut ChaCha8Rng, n: usize, hurst: f64) -> Vec<f64> {
    if n == 1 {
        return gaussian(rng, 1);
    }
    let m = 2 * n;
    let mut row = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..=n {
        row[k].re = fgn_autocovariance(hurst, k);
    }
    for k in 1..n {
        row[m - k].re = row[k].re;
    }
    fft::radix2_in_place(&mut row, false);
    // Eigenvalues of the embedding; fGn keeps them non-negative up to rounding.
    let eig: Vec<f64> = row.iter().map(|c| c.re.max(0.0)).collect();

    let mut y = vec![Complex64::new(0.0, 0.0); m];
    let mf = m as f64;
    let z0: f64 = StandardNormal.sample(rng);
    let zn: f64 = StandardNormal.sample(rng);
    y[0] = Complex64::new((eig[0] / mf).sqrt() * z0, 0.0);
    y[n] = Complex64::new((eig[n] / mf).sqrt() * zn, 0.0);
    for k in 1..n {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        let amp = (eig[k] / (2.0 * mf)).sqrt();
        y[k] = Complex64::new(amp * a, amp * b);
        y[m - k] = y[k].conj();
    }
    fft::radix2_in_place(&mut y, false);
    y.truncate(n);
    y.into_iter().map(|c| c.re).collect()
}

/// Masses of the `n = 2^J` dyadic cells after `J` splits, each cell passing a
/// share `p` to its left child and `1 − p` to its right child.
fn binomial_cascade(p: f64, n: usize) -> Vec<f64> {
    let mut masses = vec![1.0];
    while masses.len() < n {
        masses = masses.iter().flat_map(|&m| [m * p, m * (1.0 - p)]).collect();
    }
    masses
}
