//! Discrete Legendre transform of a scaling function.

use super::{derivative, Convention, Method, MultifractalSpectrum, ScalingFit, SpectrumPoint};
use crate::{Error, Result};

/// Number of `h` values on which the transform is evaluated.
pub const H_GRID_POINTS: usize = 64;

/// `d(h) = min_q (h q − τ(q))` (unnormalized) or `min_q (1 − τ(q) + h q)`
/// (normalized) on an `h` grid spanning the finite-difference slopes of `τ`.
///
/// A linear `τ` has a single slope and yields a single point.
pub fn legendre_spectrum(
    fit: &ScalingFit,
    convention: Convention,
    method: Method,
) -> Result<MultifractalSpectrum> {
    let q = &fit.q_grid;
    let tau = &fit.tau;
    if q.len() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: q.len() });
    }
    if let Some(i) = tau.iter().position(|t| !t.is_finite()) {
        return Err(Error::NonFiniteTau(q[i]));
    }
    let slopes = derivative(q, tau);
    let lo = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let hs: Vec<f64> = if hi - lo <= 1e-9 * scale {
        vec![0.5 * (lo + hi)]
    } else {
        (0..H_GRID_POINTS)
            .map(|i| lo + (hi - lo) * i as f64 / (H_GRID_POINTS - 1) as f64)
            .collect()
    };
    let offset = match convention {
        Convention::Normalized => 1.0,
        Convention::Unnormalized => 0.0,
    };
    let last = q.len() - 1;
    let points = hs
        .into_iter()
        .map(|h| {
            let (arg, d) = q
                .iter()
                .zip(tau)
                .map(|(&qv, &t)| offset + h * qv - t)
                .enumerate()
                .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
            SpectrumPoint {
                h,
                d,
                q: q[arg],
                boundary_limited: arg == 0 || arg == last,
            }
        })
        .collect();
    Ok(MultifractalSpectrum { points, method })
}
