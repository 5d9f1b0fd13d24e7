//! Writing result files into the output directory.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::Serialize;
use streamlens::io::Table;

use crate::args::{Format, OutputArgs};
use crate::CliError;

pub struct Output {
    dir: PathBuf,
    prefix: String,
    plot: bool,
    format: Format,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(args: &OutputArgs, default_prefix: &str) -> Result<Self, CliError> {
        fs::create_dir_all(&args.out_dir).map_err(|e| {
            CliError::Usage(format!("cannot create output directory {}: {e}", args.out_dir.display()))
        })?;
        Ok(Self {
            dir: args.out_dir.clone(),
            prefix: args.prefix.clone().unwrap_or_else(|| default_prefix.to_string()),
            plot: !args.no_plot,
            format: args.format,
            written: Vec::new(),
        })
    }

    fn path(&self, suffix: &str, ext: &str) -> PathBuf {
        let name = if suffix.is_empty() {
            format!("{}.{ext}", self.prefix)
        } else {
            format!("{}_{suffix}.{ext}", self.prefix)
        };
        self.dir.join(name)
    }

    /// Writes a numeric table as CSV, or as JSON with `--format json`.
    pub fn table(&mut self, suffix: &str, table: &Table) -> Result<(), CliError> {
        match self.format {
            Format::Csv => {
                let path = self.path(suffix, "csv");
                let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
                table.write(BufWriter::new(file))?;
                self.written.push(path);
                Ok(())
            }
            Format::Json => {
                #[derive(Serialize)]
                struct JsonTable<'a> {
                    columns: &'a [String],
                    rows: &'a [Vec<f64>],
                }
                self.json(
                    suffix,
                    &JsonTable {
                        columns: &table.headers,
                        rows: &table.rows,
                    },
                )
            }
        }
    }

    pub fn json(&mut self, suffix: &str, value: &impl Serialize) -> Result<(), CliError> {
        let path = self.path(suffix, "json");
        let mut text = serde_json::to_string_pretty(value).map_err(streamlens::Error::from)?;
        text.push('\n');
        self.write_text(path, &text)
    }

    /// Writes an SVG unless plots are disabled; the closure only runs when needed.
    pub fn svg(&mut self, suffix: &str, render: impl FnOnce() -> String) -> Result<(), CliError> {
        if !self.plot {
            return Ok(());
        }
        let path = self.path(suffix, "svg");
        self.write_text(path, &render())
    }

    fn write_text(&mut self, path: PathBuf, text: &str) -> Result<(), CliError> {
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        self.written.push(path);
        Ok(())
    }

    /// The series file written by `synth`.
    pub fn series(&mut self, series: &streamlens::TimeSeries) -> Result<(), CliError> {
        let path = self.path("", "csv");
        streamlens::io::write_csv_file(series, &path)?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub fn stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("series")
        .to_string()
}
