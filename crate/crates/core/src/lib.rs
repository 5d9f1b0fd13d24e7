//! Nonlinear time-series analysis for information streams.
//!
//! The crate turns event streams or equidistant samples into a [`TimeSeries`]
//! and offers a suite of estimators over it:
//!
//! * [`stats`]: sample moments, auto- and cross-covariance/correlation
//! * [`spectral`]: discrete Fourier spectrum (radix-2 FFT) and Gabor transform
//! * [`cwt`]: mother wavelets and the continuous wavelet transform
//! * [`xwt`]: modulus difference, phase difference and cross-wavelet transform
//! * [`deltal`]: the ΔL deviation diagram built from sliding linear fits
//! * [`hurst`]: rescaled-range Hurst estimation, including its prefix evolution
//! * [`multifractal`]: oscillation, MF-DFA and WTMM multifractal spectra
//! * [`synth`]: generators with known scaling (white noise, Brownian motion,
//!   fractional Gaussian noise, binomial cascade)
//!
//! Every operation is a pure function of its inputs.

pub mod cwt;
pub mod deltal;
mod error;
mod exec;
pub mod fft;
pub mod hurst;
pub mod io;
mod matrix;
pub mod multifractal;
pub mod plot;
pub mod regression;
mod series;
pub mod spectral;
pub mod stats;
pub mod synth;
pub mod xwt;

pub use error::{Error, Result};
pub use exec::configure_threads;
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use series::{bin_events, profile, Centering, EventStream, TimeSeries};
