use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "streamlens",
    version,
    about = "Nonlinear time-series analysis for information streams",
    after_help = "Every subcommand accepts --config FILE with `key = value` lines naming its long \
                  flags; flags given on the command line win. STREAMLENS_THREADS caps the worker \
                  threads (0 = automatic)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Autocorrelation function of one series
    #[command(args_override_self = true)]
    Acf(AcfArgs),
    /// Cross-correlation function of two series
    #[command(args_override_self = true)]
    Ccf(CcfArgs),
    /// One-sided Fourier amplitude and phase spectrum
    #[command(args_override_self = true)]
    Spectrum(SpectrumArgs),
    /// Gabor (Gaussian-windowed Fourier) transform
    #[command(args_override_self = true)]
    Gabor(GaborArgs),
    /// Continuous wavelet transform and scalogram
    #[command(args_override_self = true)]
    Cwt(CwtArgs),
    /// Cross-wavelet comparison of two series
    #[command(args_override_self = true)]
    Xwt(XwtArgs),
    /// ΔL diagram: deviations from sliding linear fits
    #[command(args_override_self = true)]
    Deltal(DeltalArgs),
    /// Rescaled-range Hurst exponent
    #[command(args_override_self = true)]
    Hurst(HurstArgs),
    /// Multifractal scaling function and spectrum
    #[command(args_override_self = true)]
    Mf(MfArgs),
    /// Synthetic series with known scaling
    #[command(args_override_self = true)]
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Directory receiving the output files (created if missing)
    #[arg(short = 'o', long, default_value = ".")]
    pub out_dir: PathBuf,
    /// File name prefix; defaults to the input file stem
    #[arg(long)]
    pub prefix: Option<String>,
    /// Skip the SVG plots
    #[arg(long)]
    pub no_plot: bool,
    /// Format of the numeric tables
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// key = value file supplying defaults for the long flags
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input CSV file
    pub input: PathBuf,
    /// Value column, by header name or zero-based index (default: last column)
    #[arg(long)]
    pub column: Option<String>,
    /// Sampling step, overriding the time column
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First input CSV file
    pub x: PathBuf,
    /// Second input CSV file
    pub y: PathBuf,
    /// Value column in both files, by name or zero-based index
    #[arg(long)]
    pub column: Option<String>,
    /// Sampling step, overriding the time columns
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    /// Divide by the product of standard deviations
    Standard,
    /// Divide by the lag-zero cross-covariance (not bounded by 1)
    Paper,
    /// No normalization (covariance)
    Covariance,
}

#[derive(Debug, Args)]
pub struct AcfArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest lag (default: T/4)
    #[arg(long)]
    pub max_lag: Option<usize>,
    /// Normalization of the covariance
    #[arg(long, value_enum, default_value = "standard")]
    pub normalization: NormalizationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CcfArgs {
    #[command(flatten)]
    pub input: PairArgs,
    /// Largest absolute lag (default: T/4)
    #[arg(long)]
    pub max_lag: Option<usize>,
    /// Normalization of the covariance
    #[arg(long, value_enum, default_value = "standard")]
    pub normalization: NormalizationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Bins above this fraction of the peak amplitude are reported as dominant
    #[arg(long, default_value_t = 0.1)]
    pub dominant_fraction: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GaborArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Gaussian window width in samples (default: T/10)
    #[arg(long)]
    pub window_width: Option<f64>,
    /// Number of frequencies, evenly spaced from 0 to Nyquist
    #[arg(long, default_value_t = 64)]
    pub n_frequencies: usize,
    /// Distance in samples between window centres
    #[arg(long, default_value_t = 1)]
    pub location_stride: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Mother wavelet: gaussian_wave, mexican_hat, haar or morlet
    #[arg(long, default_value = "mexican_hat")]
    pub wavelet: String,
    /// Number of log-spaced scales
    #[arg(long, default_value_t = 64)]
    pub n_scales: usize,
    /// Smallest scale in samples
    #[arg(long, default_value_t = 2.0)]
    pub min_scale: f64,
    /// Largest scale in samples (default: T/4)
    #[arg(long)]
    pub max_scale: Option<f64>,
    /// Scale grid `min:max:n`, overriding the three flags above
    #[arg(long = "scales", value_name = "MIN:MAX:N")]
    pub grid: Option<String>,
    /// Write every n-th location to the coefficient table
    #[arg(long, default_value_t = 1)]
    pub location_stride: usize,
}

#[derive(Debug, Args)]
pub struct CwtArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scales: ScaleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CrossKindArg {
    /// Cross-wavelet transform conj(Wx)·Wy
    Crwt,
    /// Modulus of the difference |Wx − Wy|
    Diffmod,
    /// Wrapped phase difference (complex wavelets only)
    Phase,
}

#[derive(Debug, Args)]
pub struct XwtArgs {
    #[command(flatten)]
    pub input: PairArgs,
    /// Cross measure
    #[arg(long, value_enum, default_value = "crwt", alias = "kind")]
    pub metric: CrossKindArg,
    #[command(flatten)]
    pub scales: ScaleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DeltalArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Analyse the values themselves instead of their accumulated profile
    #[arg(long)]
    pub raw: bool,
    /// Skip the E(j, s) diagram table and heatmap (large for long series)
    #[arg(long)]
    pub no_diagram: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HurstArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Smallest window size
    #[arg(long, default_value_t = 8)]
    pub min_window: usize,
    /// Largest window size (default: T/2)
    #[arg(long)]
    pub max_window: Option<usize>,
    /// Number of log-spaced window sizes
    #[arg(long, default_value_t = 20)]
    pub n_windows: usize,
    /// Also estimate H on growing prefixes of the series
    #[arg(long)]
    pub rolling: bool,
    /// Prefix-length increment for --rolling
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Shortest prefix for --rolling
    #[arg(long, default_value_t = 64)]
    pub min_prefix: usize,
    /// Smallest single-step drop of H reported as a regime break
    #[arg(long, default_value_t = 0.05)]
    pub break_drop: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oscillation,
    Mfdfa,
    Wtmm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// Z = Σ R^q, Brownian motion gives τ(q) = q/2 − 1
    Unnormalized,
    /// Z = 2^−j Σ R^q, Brownian motion gives τ(q) = q/2
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalArg {
    /// The samples are the function itself
    Path,
    /// The samples are increments (or cell masses) of the function
    Increments,
}

#[derive(Debug, Args)]
pub struct MfArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Estimation route
    #[arg(long, value_enum, default_value = "oscillation")]
    pub method: MethodArg,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub q_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub q_max: f64,
    #[arg(long, default_value_t = 0.25)]
    pub q_step: f64,
    /// Partition-function convention (oscillation)
    #[arg(long, value_enum, default_value = "unnormalized")]
    pub convention: ConventionArg,
    /// How samples relate to the analysed function (oscillation, wtmm)
    #[arg(long, value_enum, default_value = "path")]
    pub signal: SignalArg,
    /// Dyadic level window `jmin:jmax` (oscillation)
    #[arg(long)]
    pub levels: Option<String>,
    /// Detrending polynomial degree (mfdfa)
    #[arg(long, default_value_t = 1)]
    pub poly_order: usize,
    /// Smallest segment size (mfdfa) or fitted scale (wtmm)
    #[arg(long)]
    pub min_scale: Option<f64>,
    /// Largest segment size (mfdfa) or fitted scale (wtmm)
    #[arg(long)]
    pub max_scale: Option<f64>,
    /// Mother wavelet (wtmm)
    #[arg(long, default_value = "mexican_hat")]
    pub wavelet: String,
    /// Floor applied before negative powers
    #[arg(long, default_value_t = 1e-12)]
    pub floor: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "white_noise", alias = "white-noise")]
    WhiteNoise,
    Brownian,
    Fbm,
    #[value(name = "binomial_cascade", alias = "binomial-cascade")]
    BinomialCascade,
}

/// With `-o FILE.csv` the series is written to that file (and the plot next
/// to it); otherwise `-o` names a directory as for the other subcommands.
#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Process to generate
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Number of samples (a power of two for fbm and binomial-cascade)
    #[arg(long, default_value_t = 4096)]
    pub length: usize,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Target Hurst exponent for fbm
    #[arg(long, default_value_t = 0.7)]
    pub hurst: f64,
    /// Left-child share for binomial-cascade
    #[arg(long, default_value_t = 0.7)]
    pub p: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}
