//! CSV ingestion and serialization.
//!
//! Input files are comma separated with an optional header. The value column is
//! picked by name or index; a numeric first column, when present, supplies the
//! time axis. Dates and other non-numeric time stamps are carried as opaque
//! labels and the axis falls back to unit spacing (or the given step override).
//!
//! Numbers are written with 17 significant digits so that reading a file back
//! reproduces the values exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::{Error, Result, TimeSeries};

/// Which column holds the values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ColumnSpec {
    /// The last column of the file.
    #[default]
    Last,
    Name(String),
    /// Zero-based column index.
    Index(usize),
}

impl std::str::FromStr for ColumnSpec {
    type Err = std::convert::Infallible;

    /// Digits select by index, anything else by name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSpec::Index(i),
            Err(_) => ColumnSpec::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReadOptions {
    pub column: ColumnSpec,
    /// Overrides the sampling step (and skips the equal-spacing check).
    pub step: Option<f64>,
}

pub fn read_csv(path: impl AsRef<Path>, options: &ReadOptions) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let mut series = read_csv_from(file, options)?;
    if series.label().is_empty() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            series = series.with_label(stem);
        }
    }
    Ok(series)
}

pub fn read_csv_from(reader: impl Read, options: &ReadOptions) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Csv {
            row: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push(rec);
    }
    let first = records.first().ok_or(Error::NoDataRows)?;

    let (column, has_header) = match &options.column {
        ColumnSpec::Name(name) => {
            let idx = first
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.clone()))?;
            (idx, true)
        }
        spec => {
            let idx = match spec {
                ColumnSpec::Index(i) => *i,
                _ => first.len().saturating_sub(1),
            };
            let cell = first
                .get(idx)
                .ok_or_else(|| Error::MissingColumn(idx.to_string()))?;
            (idx, cell.parse::<f64>().is_err())
        }
    };
    let label = if has_header {
        first.get(column).unwrap_or_default().to_string()
    } else {
        String::new()
    };

    let data = &records[usize::from(has_header)..];
    if data.is_empty() {
        return Err(Error::NoDataRows);
    }

    let row_of = |rec: &csv::StringRecord| rec.position().map_or(0, |p| p.line());
    let mut values = Vec::with_capacity(data.len());
    for rec in data {
        let cell = rec.get(column).ok_or_else(|| Error::Csv {
            row: row_of(rec),
            message: format!("missing value column {column}"),
        })?;
        let v: f64 = cell.parse().map_err(|_| Error::Csv {
            row: row_of(rec),
            message: format!("non-numeric value `{cell}`"),
        })?;
        if !v.is_finite() {
            return Err(Error::Csv {
                row: row_of(rec),
                message: format!("non-finite value `{cell}`"),
            });
        }
        values.push(v);
    }

    let (start, step) = match options.step {
        Some(step) => (0.0, step),
        None => numeric_axis(data, column)?.unwrap_or((0.0, 1.0)),
    };
    Ok(TimeSeries::with_axis(values, start, step)?.with_label(label))
}

/// Start and step from a numeric first column, if there is one.
fn numeric_axis(data: &[csv::StringRecord], value_column: usize) -> Result<Option<(f64, f64)>> {
    if value_column == 0 || data.len() < 2 {
        return Ok(None);
    }
    let times: Option<Vec<f64>> = data
        .iter()
        .map(|r| r.get(0).and_then(|c| c.parse::<f64>().ok()))
        .collect();
    let Some(times) = times else {
        return Ok(None);
    };
    let step = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(
            "time column must be strictly increasing (or pass a step override)".into(),
        ));
    }
    for (i, w) in times.windows(2).enumerate() {
        if ((w[1] - w[0]) - step).abs() > 1e-6 * step {
            let row = data[i + 1].position().map_or(0, |p| p.line());
            return Err(Error::Csv {
                row,
                message: "rows are not equally spaced in time (pass a step override)".into(),
            });
        }
    }
    Ok(Some((times[0], step)))
}

/// Writes `time,<label>` rows.
pub fn write_csv(series: &TimeSeries, writer: impl Write) -> Result<()> {
    let name = if series.label().is_empty() {
        "value"
    } else {
        series.label()
    };
    let mut table = Table::new(vec!["time".into(), name.into()]);
    for (i, &v) in series.values().iter().enumerate() {
        table.push(vec![series.time_at(i), v]);
    }
    table.write(writer)
}

pub fn write_csv_file(series: &TimeSeries, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_csv(series, std::io::BufWriter::new(file))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A numeric table with a header row. Columns flagged as integer are written
/// without a fractional part.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub integer: Vec<bool>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: Vec<String>) -> Self {
        let integer = vec![false; headers.len()];
        Self {
            headers,
            integer,
            rows: Vec::new(),
        }
    }

    pub fn with_integer_columns(mut self, columns: &[usize]) -> Self {
        for &c in columns {
            self.integer[c] = true;
        }
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn column(&self, idx: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[idx]).collect()
    }

    pub fn write(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let map_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.headers).map_err(map_err)?;
        for row in &self.rows {
            let cells = row.iter().zip(&self.integer).map(|(&v, &int)| {
                if int {
                    format!("{}", v as i64)
                } else {
                    format_f64(v)
                }
            });
            w.write_record(cells).map_err(map_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Reads a table written by [`Table::write`] (header plus numeric rows).
    pub fn read(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Csv {
                row: 1,
                message: e.to_string(),
            })?
            .iter()
            .map(String::from)
            .collect();
        let mut table = Table::new(headers);
        // A column is integer when every cell is written as one.
        let mut integer = vec![true; table.headers.len()];
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Csv {
                row: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let row = rec.position().map_or(0, |p| p.line());
            let vals = rec
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    if cell.parse::<i64>().is_err() {
                        if let Some(flag) = integer.get_mut(c) {
                            *flag = false;
                        }
                    }
                    cell.parse::<f64>().map_err(|_| Error::Csv {
                        row,
                        message: format!("non-numeric value `{cell}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(vals);
        }
        if !table.rows.is_empty() {
            table.integer = integer;
        }
        Ok(table)
    }
}
