use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Equidistant real-valued samples `x_0 .. x_{T-1}` taken at `start + i * step`.
///
/// Construction rejects empty input, non-finite values and non-positive steps,
/// so every analysis can rely on a valid series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TimeSeries {
    label: String,
    start: f64,
    step: f64,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSeries {
    #[serde(default)]
    label: String,
    #[serde(default)]
    start: f64,
    #[serde(default = "unit_step")]
    step: f64,
    values: Vec<f64>,
}

fn unit_step() -> f64 {
    1.0
}

impl TryFrom<RawSeries> for TimeSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        TimeSeries::with_axis(raw.values, raw.start, raw.step).map(|s| s.with_label(raw.label))
    }
}

impl TimeSeries {
    /// Series starting at 0 with unit step.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_axis(values, 0.0, 1.0)
    }

    pub fn with_axis(values: Vec<f64>, start: f64, step: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step must be positive and finite, got {step}"
            )));
        }
        if !start.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "start must be finite, got {start}"
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            label: String::new(),
            start,
            step,
            values,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a series holds at least one sample.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Time stamp of sample `i`.
    pub fn time_at(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    /// A new series on the same axis with different values.
    pub fn map_values(&self, values: Vec<f64>) -> Result<Self> {
        Ok(Self::with_axis(values, self.start, self.step)?.with_label(self.label.clone()))
    }

    /// The first `len` samples.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        let len = len.min(self.len());
        self.map_values(self.values[..len].to_vec())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Publication times `τ_1 < … < τ_k` of documents within `[start, end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EventStream {
    times: Vec<f64>,
    start: f64,
    end: f64,
}

impl EventStream {
    pub fn new(times: Vec<f64>, start: f64, end: f64) -> Result<Self> {
        if !(end > start) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "stream span must satisfy start < end, got [{start}, {end})"
            )));
        }
        if times.is_empty() {
            return Err(Error::NoEvents);
        }
        for (i, &t) in times.iter().enumerate() {
            if !t.is_finite() || t < start || t >= end {
                return Err(Error::EventOutOfSpan {
                    index: i,
                    time: t,
                    start,
                    end,
                });
            }
            if i > 0 && t <= times[i - 1] {
                return Err(Error::UnsortedEvents { index: i, time: t });
            }
        }
        Ok(Self { times, start, end })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Counts events per bin `[start + i*step, start + (i+1)*step)`.
///
/// The result has `ceil((end - start) / step)` bins; an event lying exactly on
/// a boundary belongs to the bin on its right.
pub fn bin_events(stream: &EventStream, step: f64) -> Result<TimeSeries> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bin step must be positive, got {step}"
        )));
    }
    let span = stream.end - stream.start;
    let bins = ((span / step).ceil() as usize).max(1);
    let mut counts = vec![0.0; bins];
    for &t in &stream.times {
        let idx = (((t - stream.start) / step).floor() as usize).min(bins - 1);
        counts[idx] += 1.0;
    }
    TimeSeries::with_axis(counts, stream.start, step)
}

/// Whether [`profile`] subtracts the sample mean before accumulating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Centering {
    #[default]
    Mean,
    None,
}

/// Accumulated sums `y_t = Σ_{k≤t} (x_k - x̄)`, or of the raw values when
/// centering is off.
pub fn profile(series: &TimeSeries, centering: Centering) -> TimeSeries {
    let values = cumulative_sum(series.values(), centering);
    series
        .map_values(values)
        .expect("accumulating finite values stays finite")
}

pub(crate) fn cumulative_sum(values: &[f64], centering: Centering) -> Vec<f64> {
    let mean = match centering {
        Centering::Mean => values.iter().sum::<f64>() / values.len() as f64,
        Centering::None => 0.0,
    };
    let mut acc = 0.0;
    values
        .iter()
        .map(|&v| {
            acc += v - mean;
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_invalid_series() {
        assert!(matches!(TimeSeries::new(vec![]), Err(Error::EmptySeries)));
        assert!(matches!(
            TimeSeries::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        ));
        assert!(TimeSeries::with_axis(vec![1.0], 0.0, 0.0).is_err());
        assert!(TimeSeries::with_axis(vec![1.0], 0.0, -1.0).is_err());
    }

    #[test]
    fn bins_small_stream() {
        let stream = EventStream::new(vec![0.5, 1.5, 1.7], 0.0, 2.0).unwrap();
        let s = bin_events(&stream, 1.0).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0]);
        assert_eq!(s.step(), 1.0);
    }

    #[test]
    fn boundary_event_goes_right() {
        let stream = EventStream::new(vec![1.0], 0.0, 3.0).unwrap();
        assert_eq!(bin_events(&stream, 1.0).unwrap().values(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn partial_last_bin() {
        let stream = EventStream::new(vec![0.1, 2.4], 0.0, 2.5).unwrap();
        assert_eq!(bin_events(&stream, 1.0).unwrap().values(), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn stream_errors() {
        assert!(matches!(
            EventStream::new(vec![], 0.0, 1.0),
            Err(Error::NoEvents)
        ));
        let err = EventStream::new(vec![0.5, 0.2], 0.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("unsorted events"));
        assert!(EventStream::new(vec![0.5, 0.5], 0.0, 1.0).is_err());
        assert!(EventStream::new(vec![1.5], 0.0, 1.0).is_err());
    }

    #[test]
    fn many_uniform_events_match_direct_count() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut times: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>() * 100.0).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let n = times.len();
        let stream = EventStream::new(times.clone(), 0.0, 100.0).unwrap();
        let binned = bin_events(&stream, 1.0).unwrap();
        assert_eq!(binned.len(), 100);
        for (i, &count) in binned.values().iter().enumerate() {
            let lo = i as f64;
            let direct = times.iter().filter(|&&t| t >= lo && t < lo + 1.0).count();
            assert_eq!(count, direct as f64);
        }
        assert_eq!(binned.values().iter().sum::<f64>(), n as f64);
    }

    #[test]
    fn profile_examples() {
        let s = TimeSeries::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(profile(&s, Centering::None).values(), &[1.0, 2.0, 3.0]);
        let s = TimeSeries::new(vec![0.3, -1.7, 2.9, 0.01, 5.5]).unwrap();
        let p = profile(&s, Centering::Mean);
        assert!(p.values()[4].abs() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let s = TimeSeries::with_axis(vec![1.0, 2.5], 3.0, 0.5)
            .unwrap()
            .with_label("trump");
        let json = s.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"label":"trump","start":3.0,"step":0.5,"values":[1.0,2.5]}"#
        );
        assert_eq!(TimeSeries::from_json(&json).unwrap(), s);
        assert!(TimeSeries::from_json(r#"{"label":"x","start":0,"step":0,"values":[1]}"#).is_err());
    }

    proptest! {
        #[test]
        fn binning_preserves_count(mut raw in proptest::collection::vec(0.0f64..50.0, 1..300), step in 0.1f64..7.0) {
            raw.sort_by(f64::total_cmp);
            raw.dedup();
            let n = raw.len();
            let stream = EventStream::new(raw, 0.0, 50.0).unwrap();
            let s = bin_events(&stream, step).unwrap();
            prop_assert_eq!(s.len(), (50.0 / step).ceil() as usize);
            prop_assert_eq!(s.values().iter().sum::<f64>(), n as f64);
        }

        #[test]
        fn profile_differences_invert(values in proptest::collection::vec(-1e3f64..1e3, 1..200)) {
            let s = TimeSeries::new(values.clone()).unwrap();
            let p = profile(&s, Centering::None);
            let y = p.values();
            prop_assert!((y[0] - values[0]).abs() <= 1e-12 * values[0].abs().max(1.0));
            for t in 1..y.len() {
                let scale = y[t].abs().max(y[t - 1].abs()).max(1.0);
                prop_assert!((y[t] - y[t - 1] - values[t]).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn profile_of_integers_is_exact(values in proptest::collection::vec(-1000i32..1000, 1..200)) {
            let vals: Vec<f64> = values.iter().map(|&v| v as f64).collect();
            let p = profile(&TimeSeries::new(vals.clone()).unwrap(), Centering::None);
            let y = p.values();
            for t in 1..y.len() {
                prop_assert_eq!(y[t] - y[t - 1], vals[t]);
            }
        }
    }
}
