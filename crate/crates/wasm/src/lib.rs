//! Browser bindings: three analyses of a series, each rendered to SVG.
//!
//! The `*_svg` functions do the work and return plain Rust results so they
//! can be tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use streamlens::cwt::{self, ScalogramKind};
use streamlens::hurst;
use streamlens::io::{read_csv_from, ReadOptions};
use streamlens::multifractal::{self, Method, MfdfaOptions, OscillationOptions, SignalKind, WtmmOptions};
use streamlens::plot::{Curve, Heatmap, LinePlot};
use streamlens::regression::log_space;
use streamlens::synth::{self, GeneratorKind, GeneratorSpec};
use streamlens::TimeSeries;
use wasm_bindgen::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn series(values: &[f64]) -> Result<TimeSeries> {
    TimeSeries::new(values.to_vec()).map_err(|e| e.to_string())
}

/// Samples of a synthetic process: `white_noise`, `brownian`, `fbm`
/// (`param` = Hurst exponent) or `binomial_cascade` (`param` = p).
pub fn synthesize(kind: &str, length: usize, seed: u64, param: f64) -> Result<Vec<f64>> {
    let kind = match kind {
        "white_noise" => GeneratorKind::WhiteNoise,
        "brownian" => GeneratorKind::Brownian,
        "fbm" => GeneratorKind::Fbm { hurst: param },
        "binomial_cascade" => GeneratorKind::BinomialCascade { p: param },
        other => return Err(format!("unknown generator `{other}`")),
    };
    synth::generate(&GeneratorSpec::new(kind, length, seed))
        .map(TimeSeries::into_values)
        .map_err(|e| e.to_string())
}

/// Values of the last column of pasted CSV text.
pub fn parse_csv(text: &str) -> Result<Vec<f64>> {
    read_csv_from(text.as_bytes(), &ReadOptions::default())
        .map(TimeSeries::into_values)
        .map_err(|e| e.to_string())
}

/// Wavelet energy scalogram with the cone of influence.
pub fn scalogram_svg(values: &[f64], wavelet: &str, n_scales: usize) -> Result<String> {
    let x = series(values)?;
    let wavelet = cwt::make_wavelet(wavelet).map_err(|e| e.to_string())?;
    let hi = (x.len() as f64 / 4.0).max(4.0);
    let scales = log_space(2.0, hi, n_scales.max(2));
    let field = cwt::cwt(&x, wavelet, Some(&scales)).map_err(|e| e.to_string())?;
    let mut map = Heatmap::new(
        format!("Scalogram ({})", wavelet.name()),
        cwt::scalogram(&field, ScalogramKind::Energy),
        field.locations.clone(),
        field.scales.clone(),
    );
    map.log_y = true;
    map.coi = Some(field.coi.clone());
    Ok(map.to_svg())
}

/// R/S curve on log-log axes with the fitted Hurst line.
pub fn hurst_svg(values: &[f64]) -> Result<String> {
    let x = series(values)?;
    let curve = hurst::rs_curve(&x, None).map_err(|e| e.to_string())?;
    let fit = hurst::fit_hurst(&curve).map_err(|e| e.to_string())?;
    let ns: Vec<f64> = curve.window_sizes.iter().map(|&n| n as f64).collect();
    let fitted = ns.iter().map(|n| (fit.intercept + fit.h * n.ln()).exp()).collect();
    Ok(LinePlot::new(format!("Rescaled range: H = {:.3}", fit.h), "window size n", "R/S")
        .log_x()
        .log_y()
        .with_curve(Curve::points("R/S", ns.clone(), curve.rs.clone()))
        .with_curve(Curve::line("fit", ns, fitted))
        .to_svg())
}

/// Singularity spectrum `d(h)` by `oscillation`, `mfdfa` or `wtmm`.
/// `increments` marks samples that are increments (or masses) of the
/// function rather than the function itself.
pub fn multifractal_svg(values: &[f64], method: &str, increments: bool) -> Result<String> {
    let x = series(values)?;
    let q = multifractal::default_q_grid();
    let signal = if increments { SignalKind::Increments } else { SignalKind::Path };
    let (method, spectrum) = match method {
        "oscillation" => {
            let options = OscillationOptions {
                signal,
                ..OscillationOptions::default()
            };
            let o = multifractal::oscillation_structure(&x, &q, &options).map_err(|e| e.to_string())?;
            let convention = multifractal::Convention::default();
            let s = multifractal::legendre_spectrum(o.fit(convention), convention, Method::Oscillation);
            (Method::Oscillation, s)
        }
        "mfdfa" => {
            // Fluctuation analysis integrates the samples itself.
            let m = multifractal::mfdfa(&x, &q, &MfdfaOptions::default()).map_err(|e| e.to_string())?;
            (Method::Mfdfa, Ok(m.spectrum))
        }
        "wtmm" => {
            let options = WtmmOptions {
                signal,
                ..WtmmOptions::default()
            };
            let w = multifractal::wtmm_spectrum_with(&x, &q, &options).map_err(|e| e.to_string())?;
            (Method::Wtmm, Ok(w.spectrum))
        }
        other => return Err(format!("unknown method `{other}`")),
    };
    let spectrum = spectrum.map_err(|e| e.to_string())?;
    Ok(LinePlot::new(
        format!("Multifractal spectrum ({}): width {:.3}", method.name(), spectrum.width()),
        "h",
        "d(h)",
    )
    .with_curve(Curve::points(
        "d(h)",
        spectrum.points.iter().map(|p| p.h).collect(),
        spectrum.points.iter().map(|p| p.d).collect(),
    ))
    .to_svg())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = synthesize)]
pub fn synthesize_js(kind: &str, length: usize, seed: u32, param: f64) -> std::result::Result<Vec<f64>, JsError> {
    synthesize(kind, length, u64::from(seed), param).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = parseCsv)]
pub fn parse_csv_js(text: &str) -> std::result::Result<Vec<f64>, JsError> {
    parse_csv(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = scalogramSvg)]
pub fn scalogram_svg_js(values: &[f64], wavelet: &str, n_scales: usize) -> std::result::Result<String, JsError> {
    js(scalogram_svg(values, wavelet, n_scales))
}

#[wasm_bindgen(js_name = hurstSvg)]
pub fn hurst_svg_js(values: &[f64]) -> std::result::Result<String, JsError> {
    js(hurst_svg(values))
}

#[wasm_bindgen(js_name = multifractalSvg)]
pub fn multifractal_svg_js(values: &[f64], method: &str, increments: bool) -> std::result::Result<String, JsError> {
    js(multifractal_svg(values, method, increments))
}
