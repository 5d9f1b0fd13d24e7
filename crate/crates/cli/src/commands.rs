use std::path::Path;

use serde::Serialize;
use streamlens::cwt::{self, Wavelet, WaveletField};
use streamlens::io::{read_csv, ColumnSpec, ReadOptions, Table};
use streamlens::multifractal::{
    self, legendre_spectrum, Convention, Method, MfdfaOptions, MultifractalSpectrum, OscillationOptions,
    ScalingFit, SignalKind, Skeleton, WtmmOptions,
};
use streamlens::plot::{Curve, Heatmap, LinePlot};
use streamlens::regression::{log_space, log_space_usize};
use streamlens::stats::{self, Normalization};
use streamlens::synth::{self, GeneratorKind, GeneratorSpec};
use streamlens::{deltal, hurst, spectral, xwt, Matrix, TimeSeries};

use crate::args::*;
use crate::output::{stem, Output};
use crate::CliError;

pub fn run(command: Command) -> Result<Vec<std::path::PathBuf>, CliError> {
    let out = match command {
        Command::Acf(a) => acf(a)?,
        Command::Ccf(a) => ccf(a)?,
        Command::Spectrum(a) => spectrum(a)?,
        Command::Gabor(a) => gabor(a)?,
        Command::Cwt(a) => cwt_cmd(a)?,
        Command::Xwt(a) => xwt_cmd(a)?,
        Command::Deltal(a) => deltal_cmd(a)?,
        Command::Hurst(a) => hurst_cmd(a)?,
        Command::Mf(a) => mf(a)?,
        Command::Synth(a) => synth_cmd(a)?,
    };
    Ok(out.written().to_vec())
}

fn read_input(path: &Path, column: &Option<String>, step: Option<f64>) -> Result<TimeSeries, CliError> {
    if !path.is_file() {
        return Err(CliError::Usage(format!("input file not found: {}", path.display())));
    }
    let column = match column {
        Some(c) => c.parse::<ColumnSpec>().expect("infallible"),
        None => ColumnSpec::Last,
    };
    read_csv(path, &ReadOptions { column, step }).map_err(|e| CliError::data(path, e))
}

fn normalization(arg: NormalizationArg) -> Normalization {
    match arg {
        NormalizationArg::Standard => Normalization::Standard,
        NormalizationArg::Paper => Normalization::Paper,
        NormalizationArg::Covariance => Normalization::Covariance,
    }
}

fn correlation_table(lags: &[i64], values: &[f64]) -> Table {
    let mut t = Table::new(vec!["lag".into(), "value".into()]).with_integer_columns(&[0]);
    for (&l, &v) in lags.iter().zip(values) {
        t.push(vec![l as f64, v]);
    }
    t
}

fn correlation_plot(title: &str, lags: &[i64], values: &[f64]) -> String {
    LinePlot::new(title, "lag", "correlation")
        .with_curve(Curve::line("", lags.iter().map(|&l| l as f64).collect(), values.to_vec()))
        .to_svg()
}

fn acf(a: AcfArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    let max_lag = a.max_lag.unwrap_or_else(|| stats::default_max_lag(x.len()));
    let f = match normalization(a.normalization) {
        Normalization::Covariance => stats::autocovariance(&x, max_lag)?,
        _ => stats::autocorrelation(&x, max_lag)?,
    };
    out.table("acf", &correlation_table(&f.lags, &f.values))?;
    out.svg("acf", || correlation_plot(&format!("Autocorrelation of {}", x.label()), &f.lags, &f.values))?;
    Ok(out)
}

fn read_pair(p: &PairArgs) -> Result<(TimeSeries, TimeSeries), CliError> {
    let x = read_input(&p.x, &p.column, p.step)?;
    let y = read_input(&p.y, &p.column, p.step)?;
    Ok((x, y))
}

fn ccf(a: CcfArgs) -> Result<Output, CliError> {
    let (x, y) = read_pair(&a.input)?;
    let prefix = format!("{}_{}", stem(&a.input.x), stem(&a.input.y));
    let mut out = Output::new(&a.output, &prefix)?;
    let max_lag = a.max_lag.unwrap_or_else(|| stats::default_max_lag(x.len().min(y.len())));
    let f = stats::cross_correlation(&x, &y, max_lag, normalization(a.normalization))?;
    out.table("ccf", &correlation_table(&f.lags, &f.values))?;
    out.svg("ccf", || {
        correlation_plot(&format!("Cross-correlation of {} and {}", x.label(), y.label()), &f.lags, &f.values)
    })?;
    Ok(out)
}

fn spectrum(a: SpectrumArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    let s = spectral::dft(&x)?;
    let scaled = s.scaled_amplitudes();
    let dominant = s.dominant_bins(a.dominant_fraction);
    let mut t = Table::new(
        ["bin", "frequency", "amplitude", "scaled_amplitude", "phase", "dominant"]
            .map(String::from)
            .to_vec(),
    )
    .with_integer_columns(&[0, 5]);
    for m in 0..s.frequencies.len() {
        t.push(vec![
            m as f64,
            s.frequencies[m],
            s.amplitudes[m],
            scaled[m],
            s.phases[m],
            if dominant.contains(&m) { 1.0 } else { 0.0 },
        ]);
    }
    out.table("spectrum", &t)?;
    out.svg("spectrum", || {
        LinePlot::new(format!("Amplitude spectrum of {}", x.label()), "frequency", "amplitude")
            .with_curve(Curve::line("", s.frequencies.clone(), scaled.clone()))
            .to_svg()
    })?;
    Ok(out)
}

fn gabor(a: GaborArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    if a.n_frequencies < 1 || a.location_stride < 1 {
        return Err(CliError::Usage("--n-frequencies and --location-stride must be positive".into()));
    }
    let nyquist = 0.5 / x.step();
    let freqs: Vec<f64> = if a.n_frequencies == 1 {
        vec![0.0]
    } else {
        (0..a.n_frequencies)
            .map(|i| nyquist * i as f64 / (a.n_frequencies - 1) as f64)
            .collect()
    };
    let locs: Vec<f64> = (0..x.len()).step_by(a.location_stride).map(|l| l as f64).collect();
    let width = a.window_width.unwrap_or_else(|| spectral::default_window_width(&x));
    let g = spectral::gabor(&x, &freqs, &locs, width)?;
    let mut t = Table::new(["frequency", "location", "re", "im", "modulus"].map(String::from).to_vec())
        .with_integer_columns(&[1]);
    for (fi, &f) in g.frequencies.iter().enumerate() {
        for (li, &l) in g.locations.iter().enumerate() {
            let c = g.coefficients.get(fi, li);
            t.push(vec![f, l, c.re, c.im, c.norm()]);
        }
    }
    out.table("gabor", &t)?;
    out.svg("gabor", || {
        let mut h = Heatmap::new(
            format!("Gabor transform of {} (window {width})", x.label()),
            g.coefficients.map(|c| c.norm()),
            g.locations.clone(),
            g.frequencies.clone(),
        );
        h.y_label = "frequency".into();
        h.to_svg()
    })?;
    Ok(out)
}

fn scale_grid(s: &ScaleArgs, len: usize) -> Result<(Wavelet, Vec<f64>), CliError> {
    let wavelet = cwt::make_wavelet(&s.wavelet).map_err(|e| CliError::Usage(e.to_string()))?;
    let hi = s.max_scale.unwrap_or(len as f64 / 4.0);
    if s.n_scales < 1 || !(s.min_scale > 0.0) || hi < s.min_scale {
        return Err(CliError::Usage(format!(
            "need --n-scales ≥ 1 and 0 < --min-scale ≤ --max-scale, got {} scales in [{}, {hi}]",
            s.n_scales, s.min_scale
        )));
    }
    if s.location_stride < 1 {
        return Err(CliError::Usage("--location-stride must be positive".into()));
    }
    let (lo, hi, n) = match &s.grid {
        Some(g) => parse_grid(g)?,
        None => (s.min_scale, hi, s.n_scales),
    };
    let scales = if n == 1 { vec![lo] } else { log_space(lo, hi, n) };
    Ok((wavelet, scales))
}

/// `min:max:n` with `0 < min ≤ max` and `n ≥ 1` (`min < max` when `n > 1`).
fn parse_grid(g: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("--scales expects `min:max:n` with 0 < min ≤ max, got `{g}`"));
    let parts: Vec<&str> = g.split(':').map(str::trim).collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let (lo, hi): (f64, f64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    if !(lo > 0.0) || hi < lo || n < 1 || (n > 1 && hi == lo) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

fn scalogram_svg(title: String, field: &WaveletField, values: Matrix<f64>, skeleton: Option<&Skeleton>) -> String {
    let mut h = Heatmap::new(title, values, field.locations.clone(), field.scales.clone());
    h.log_y = true;
    h.coi = Some(field.coi.clone());
    if let Some(sk) = skeleton {
        h.overlays = sk
            .lines
            .iter()
            .map(|l| {
                l.points
                    .iter()
                    .map(|p| (p.location as f64, field.scales[p.scale_index]))
                    .collect()
            })
            .collect();
    }
    h.to_svg()
}

fn cwt_cmd(a: CwtArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    let (wavelet, scales) = scale_grid(&a.scales, x.len())?;
    let field = cwt::cwt(&x, wavelet, Some(&scales))?;
    let mut t = Table::new(["scale", "location", "re", "im", "modulus", "trusted"].map(String::from).to_vec())
        .with_integer_columns(&[1, 5]);
    for si in 0..field.n_scales() {
        for l in (0..field.n_locations()).step_by(a.scales.location_stride) {
            let c = field.coefficients.get(si, l);
            let trusted = if field.is_trusted(si, l) { 1.0 } else { 0.0 };
            t.push(vec![field.scales[si], l as f64, c.re, c.im, c.norm(), trusted]);
        }
    }
    out.table("cwt", &t)?;
    out.svg("scalogram", || {
        scalogram_svg(
            format!("Scalogram of {} ({})", x.label(), wavelet.name()),
            &field,
            cwt::scalogram(&field, cwt::ScalogramKind::Energy),
            None,
        )
    })?;
    Ok(out)
}

fn xwt_cmd(a: XwtArgs) -> Result<Output, CliError> {
    let (x, y) = read_pair(&a.input)?;
    let prefix = format!("{}_{}", stem(&a.input.x), stem(&a.input.y));
    let mut out = Output::new(&a.output, &prefix)?;
    if x.len() != y.len() {
        return Err(CliError::Data(format!("series lengths differ: {} vs {}", x.len(), y.len())));
    }
    let (wavelet, scales) = scale_grid(&a.scales, x.len())?;
    let wx = cwt::cwt(&x, wavelet, Some(&scales))?;
    let wy = cwt::cwt(&y, wavelet, Some(&scales))?;
    let (field, name) = match a.metric {
        CrossKindArg::Crwt => (xwt::crwt(&wx, &wy)?, "crwt"),
        CrossKindArg::Diffmod => (xwt::diffmod(&wx, &wy)?, "diffmod"),
        CrossKindArg::Phase => (xwt::phase_diff(&wx, &wy)?, "phase"),
    };
    let mut t = Table::new(["scale", "location", "re", "im", "modulus", "phase"].map(String::from).to_vec())
        .with_integer_columns(&[1]);
    let phase = field.phase();
    for si in 0..field.scales.len() {
        for l in (0..field.locations.len()).step_by(a.scales.location_stride) {
            let c = field.values.get(si, l);
            t.push(vec![field.scales[si], l as f64, c.re, c.im, c.norm(), *phase.get(si, l)]);
        }
    }
    out.table(&format!("xwt_{name}"), &t)?;
    out.svg(&format!("xwt_{name}"), || {
        let values = match a.metric {
            CrossKindArg::Phase => field.real(),
            _ => field.modulus(),
        };
        scalogram_svg(format!("{name} of {} and {} ({})", x.label(), y.label(), wavelet.name()), &wx, values, None)
    })?;
    Ok(out)
}

fn deltal_cmd(a: DeltalArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    let d = deltal::delta_l(&x, !a.raw)?;
    let mut t = Table::new(vec!["s".into(), "F".into()]).with_integer_columns(&[0]);
    for (&s, &f) in d.segment_sizes.iter().zip(&d.f) {
        t.push(vec![s as f64, f]);
    }
    out.table("deltal", &t)?;
    if !a.no_diagram {
        let mut e = Table::new(["s", "location", "E", "count"].map(String::from).to_vec())
            .with_integer_columns(&[0, 1, 3]);
        for (row, &s) in d.segment_sizes.iter().enumerate() {
            for j in 0..x.len() {
                e.push(vec![s as f64, j as f64, *d.e.get(row, j), *d.counts.get(row, j) as f64]);
            }
        }
        out.table("deltal_e", &e)?;
        out.svg("deltal_e", || {
            // Keep the image small: at most MAX_PLOT_ROWS evenly spaced segment sizes.
            let n = d.segment_sizes.len();
            let rows: Vec<usize> = if n <= MAX_PLOT_ROWS {
                (0..n).collect()
            } else {
                (0..MAX_PLOT_ROWS).map(|i| i * (n - 1) / (MAX_PLOT_ROWS - 1)).collect()
            };
            let e = Matrix::from_rows(rows.iter().map(|&r| d.e.row(r).to_vec()).collect());
            let mut h = Heatmap::new(
                format!("ΔL diagram of {}", x.label()),
                e,
                (0..x.len()).map(|j| j as f64).collect(),
                rows.iter().map(|&r| d.segment_sizes[r] as f64).collect(),
            );
            h.y_label = "segment size".into();
            h.to_svg()
        })?;
    }
    out.svg("deltal", || {
        LinePlot::new(format!("ΔL mean deviation of {}", x.label()), "segment size s", "F(s)")
            .log_x()
            .log_y()
            .with_curve(Curve::points(
                "F(s)",
                d.segment_sizes.iter().map(|&s| s as f64).collect(),
                d.f.clone(),
            ))
            .to_svg()
    })?;
    Ok(out)
}

const MAX_PLOT_ROWS: usize = 128;

#[derive(Serialize)]
struct HurstReport<'a> {
    #[serde(rename = "H")]
    h: f64,
    r_squared: f64,
    intercept: f64,
    fit_range: (usize, usize),
    series_len: usize,
    warning: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regime_break: Option<hurst::RegimeBreak>,
}

fn hurst_cmd(a: HurstArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let mut out = Output::new(&a.output, &stem(&a.input.input))?;
    let max_window = a.max_window.unwrap_or(x.len() / 2).max(a.min_window);
    let sizes = log_space_usize(a.min_window, max_window, a.n_windows);
    let curve = hurst::rs_curve(&x, Some(&sizes))?;
    let fit = hurst::fit_hurst(&curve)?;
    let mut t = Table::new(["n", "rs", "count"].map(String::from).to_vec()).with_integer_columns(&[0, 2]);
    for i in 0..curve.window_sizes.len() {
        t.push(vec![curve.window_sizes[i] as f64, curve.rs[i], curve.counts[i] as f64]);
    }
    out.table("rs", &t)?;
    let rolling = if a.rolling {
        let r = hurst::rolling_hurst(
            &x,
            &hurst::RollingOptions {
                min_prefix: a.min_prefix,
                stride: a.stride,
                break_drop: a.break_drop,
            },
        )?;
        let mut t = Table::new(vec!["t".into(), "H".into()]).with_integer_columns(&[0]);
        for &(n, h) in &r.points {
            t.push(vec![n as f64, h]);
        }
        out.table("hurst_rolling", &t)?;
        Some(r)
    } else {
        None
    };
    out.json(
        "hurst",
        &HurstReport {
            h: fit.h,
            r_squared: fit.r_squared,
            intercept: fit.intercept,
            fit_range: fit.fit_range,
            series_len: curve.series_len,
            warning: fit.warning.as_deref(),
            regime_break: rolling.as_ref().and_then(|r| r.regime_break.clone()),
        },
    )?;
    out.svg("rs", || {
        let ns: Vec<f64> = curve.window_sizes.iter().map(|&n| n as f64).collect();
        let fitted: Vec<f64> = ns.iter().map(|n| (fit.intercept + fit.h * n.ln()).exp()).collect();
        LinePlot::new(format!("R/S of {} (H = {:.3})", x.label(), fit.h), "window size n", "R/S")
            .log_x()
            .log_y()
            .with_curve(Curve::points("R/S", ns.clone(), curve.rs.clone()))
            .with_curve(Curve::line("fit", ns, fitted))
            .to_svg()
    })?;
    if let Some(r) = &rolling {
        out.svg("hurst_rolling", || {
            let mut plot = LinePlot::new(format!("H on growing prefixes of {}", x.label()), "prefix length t", "H")
                .with_curve(Curve::line(
                    "H(t)",
                    r.points.iter().map(|p| p.0 as f64).collect(),
                    r.points.iter().map(|p| p.1).collect(),
                ));
            if let Some(b) = &r.regime_break {
                if let Some(&(t, h)) = r.points.iter().find(|p| p.0 == b.t) {
                    plot = plot.with_curve(Curve::points("regime break", vec![t as f64], vec![h]));
                }
            }
            plot.to_svg()
        })?;
    }
    Ok(out)
}

fn parse_levels(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("--levels expects `jmin:jmax`, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn mf(a: MfArgs) -> Result<Output, CliError> {
    let x = read_input(&a.input.input, &a.input.column, a.input.step)?;
    let method = match a.method {
        MethodArg::Oscillation => Method::Oscillation,
        MethodArg::Mfdfa => Method::Mfdfa,
        MethodArg::Wtmm => Method::Wtmm,
    };
    let mut out = Output::new(&a.output, &format!("{}_mf_{}", stem(&a.input.input), method.name()))?;
    if !(a.q_step > 0.0) || a.q_max < a.q_min {
        return Err(CliError::Usage("need --q-step > 0 and --q-min ≤ --q-max".into()));
    }
    let q = multifractal::q_grid(a.q_min, a.q_max, a.q_step);
    let signal = match a.signal {
        SignalArg::Path => SignalKind::Path,
        SignalArg::Increments => SignalKind::Increments,
    };
    let convention = match a.convention {
        ConventionArg::Unnormalized => Convention::Unnormalized,
        ConventionArg::Normalized => Convention::Normalized,
    };

    let mut tau_table = Table::new(["q", "tau", "r_squared"].map(String::from).to_vec());
    let (fit, spectrum, skeleton): (ScalingFit, MultifractalSpectrum, Option<(WaveletField, Skeleton)>) =
        match method {
            Method::Oscillation => {
                let levels = a.levels.as_deref().map(parse_levels).transpose()?;
                let o = multifractal::oscillation_structure(
                    &x,
                    &q,
                    &OscillationOptions {
                        levels,
                        signal,
                        floor: a.floor,
                    },
                )?;
                let fit = o.fit(convention).clone();
                let spectrum = legendre_spectrum(&fit, convention, method)?;
                (fit, spectrum, None)
            }
            Method::Mfdfa => {
                let len = x.len();
                let scales = match (a.min_scale, a.max_scale) {
                    (None, None) => None,
                    (lo, hi) => {
                        let lo = lo.map_or(16, |v| v.round() as usize);
                        let hi = hi.map_or(len / 4, |v| v.round() as usize);
                        Some(log_space_usize(lo, hi.max(lo), 20))
                    }
                };
                let m = multifractal::mfdfa(
                    &x,
                    &q,
                    &MfdfaOptions {
                        scales,
                        poly_order: a.poly_order,
                        floor: a.floor,
                    },
                )?;
                tau_table = Table::new(["q", "tau", "r_squared", "h"].map(String::from).to_vec());
                for (i, (&qv, &h)) in q.iter().zip(&m.generalized_hurst).enumerate() {
                    tau_table.push(vec![qv, m.fit.tau[i], m.fit.fit_r2[i], h]);
                }
                (m.fit, m.spectrum, None)
            }
            Method::Wtmm => {
                let wavelet = cwt::make_wavelet(&a.wavelet).map_err(|e| CliError::Usage(e.to_string()))?;
                let len = x.len() + usize::from(signal == SignalKind::Increments);
                let fit_range = match (a.min_scale, a.max_scale) {
                    (None, None) => None,
                    (lo, hi) => Some((lo.unwrap_or(4.0), hi.unwrap_or(len as f64 / 32.0))),
                };
                let w = multifractal::wtmm_spectrum_with(
                    &x,
                    &q,
                    &WtmmOptions {
                        wavelet,
                        signal,
                        fit_range,
                        floor: a.floor,
                        ..WtmmOptions::default()
                    },
                )?;
                (w.fit, w.spectrum, Some((w.field, w.skeleton)))
            }
        };
    if tau_table.rows.is_empty() {
        for i in 0..q.len() {
            tau_table.push(vec![q[i], fit.tau[i], fit.fit_r2[i]]);
        }
    }
    out.table("tau", &tau_table)?;

    let mut st = Table::new(["h", "d", "q", "boundary_limited"].map(String::from).to_vec())
        .with_integer_columns(&[3]);
    for p in &spectrum.points {
        st.push(vec![p.h, p.d, p.q, if p.boundary_limited { 1.0 } else { 0.0 }]);
    }
    out.table("spectrum", &st)?;

    if let Some((field, sk)) = &skeleton {
        let mut t = Table::new(["line", "scale_index", "scale", "location", "modulus"].map(String::from).to_vec())
            .with_integer_columns(&[0, 1, 3]);
        for (id, line) in sk.lines.iter().enumerate() {
            for p in &line.points {
                t.push(vec![
                    id as f64,
                    p.scale_index as f64,
                    sk.scales[p.scale_index],
                    p.location as f64,
                    p.modulus,
                ]);
            }
        }
        out.table("skeleton", &t)?;
        out.svg("skeleton", || {
            scalogram_svg(
                format!("Maxima lines of {} ({})", x.label(), field.wavelet.name()),
                field,
                field.modulus(),
                Some(sk),
            )
        })?;
    }
    out.svg("tau", || {
        let mut plot = LinePlot::new(format!("Scaling function of {} ({})", x.label(), method.name()), "q", "τ(q)")
            .with_curve(Curve::points("estimate", q.clone(), fit.tau.clone()));
        if method == Method::Oscillation || method == Method::Wtmm {
            let shift = if method == Method::Oscillation && convention == Convention::Normalized { 0.0 } else { -1.0 };
            plot = plot.with_curve(Curve::line(
                "Brownian motion",
                q.clone(),
                q.iter().map(|v| v / 2.0 + shift).collect(),
            ));
        }
        plot.to_svg()
    })?;
    out.svg("spectrum", || {
        LinePlot::new(format!("Multifractal spectrum of {} ({})", x.label(), method.name()), "h", "d(h)")
            .with_curve(Curve::points(
                "",
                spectrum.points.iter().map(|p| p.h).collect(),
                spectrum.points.iter().map(|p| p.d).collect(),
            ))
            .to_svg()
    })?;
    Ok(out)
}

fn synth_cmd(a: SynthArgs) -> Result<Output, CliError> {
    let kind = match a.kind {
        KindArg::WhiteNoise => GeneratorKind::WhiteNoise,
        KindArg::Brownian => GeneratorKind::Brownian,
        KindArg::Fbm => GeneratorKind::Fbm { hurst: a.hurst },
        KindArg::BinomialCascade => GeneratorKind::BinomialCascade { p: a.p },
    };
    let spec = GeneratorSpec::new(kind, a.length, a.seed);
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let series = synth::generate(&spec)?;
    let mut output = a.output;
    let mut prefix = series.label().to_string();
    if output.out_dir.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        prefix = stem(&output.out_dir);
        output.prefix = None;
        output.out_dir = match output.out_dir.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => ".".into(),
        };
    }
    let mut out = Output::new(&output, &prefix)?;
    out.series(&series)?;
    out.svg("", || {
        LinePlot::new(format!("{} (seed {})", series.label(), a.seed), "time", "value")
            .with_curve(Curve::line(
                "",
                (0..series.len()).map(|i| series.time_at(i)).collect(),
                series.values().to_vec(),
            ))
            .to_svg()
    })?;
    Ok(out)
}
