//! Signal file formats. CSV is the canonical interchange: a `v,re,im`
//! header and one sample per line, printed with shortest round-trip
//! decimals so written files reparse to the identical bits. JSON wraps the
//! same samples with metadata for self-describing pipelines.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use qpdt_core::signal::SampledSignal;
use qpdt_core::QpdtError;

/// CLI failure with its process exit code: 2 for bad flags or domain
/// violations, 3 for file and parse problems, 4 for numerical failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Numeric(m) => write!(f, "{m}"),
        }
    }
}

impl From<QpdtError> for CliError {
    fn from(e: QpdtError) -> Self {
        match e {
            QpdtError::Domain(_) | QpdtError::Resource(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Reads a tabulated signal, sniffing JSON by its leading brace and
/// treating anything else as CSV. The grid must be finite and strictly
/// increasing.
pub fn read_signal(path: &Path, mu: f64) -> Result<SampledSignal, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let rows = if text.trim_start().starts_with('{') {
        parse_json_rows(&text)
    } else {
        parse_csv_rows(&text)
    }
    .map_err(|m| CliError::Io(format!("{}: {m}", path.display())))?;
    build_signal(rows, mu).map_err(|m| CliError::Io(format!("{}: {m}", path.display())))
}

fn parse_csv_rows(text: &str) -> Result<Vec<[f64; 3]>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    if header.split(',').map(str::trim).collect::<Vec<_>>() != ["v", "re", "im"] {
        return Err(format!("expected header 'v,re,im', found '{header}'"));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(format!("line {}: expected 3 fields, found {}", i + 2, fields.len()));
        }
        let mut row = [0.0; 3];
        for (j, field) in fields.iter().enumerate() {
            row[j] = field
                .parse()
                .map_err(|_| format!("line {}: '{field}' is not a number", i + 2))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_json_rows(text: &str) -> Result<Vec<[f64; 3]>, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let samples = value
        .get("samples")
        .and_then(|s| s.as_array())
        .ok_or("missing 'samples' array")?;
    let mut rows = Vec::new();
    for (i, sample) in samples.iter().enumerate() {
        let triple = sample
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| format!("sample {i}: expected [v, re, im]"))?;
        let mut row = [0.0; 3];
        for (j, x) in triple.iter().enumerate() {
            row[j] = x
                .as_f64()
                .ok_or_else(|| format!("sample {i}: entry {j} is not a number"))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn build_signal(rows: Vec<[f64; 3]>, mu: f64) -> Result<SampledSignal, String> {
    if rows.len() < 2 {
        return Err("a signal needs at least two samples".into());
    }
    let mut grid = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for row in &rows {
        if row.iter().any(|x| !x.is_finite()) {
            return Err("samples must be finite".into());
        }
        grid.push(row[0]);
        values.push(Complex64::new(row[1], row[2]));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err("the v column must be strictly increasing".into());
    }
    SampledSignal::new(grid, values, mu).map_err(|e| e.to_string())
}

pub fn write_signal(
    out: &mut dyn Write,
    signal: &SampledSignal,
    format: Format,
) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Io(format!("write failed: {e}"));
    match format {
        Format::Csv => {
            writeln!(out, "v,re,im").map_err(io_err)?;
            for (v, z) in signal.grid.iter().zip(&signal.values) {
                // {:?} gives the shortest decimal that reparses to the
                // same bits, switching to exponent form when shorter
                writeln!(out, "{v:?},{:?},{:?}", z.re, z.im).map_err(io_err)?;
            }
        }
        Format::Json => {
            let samples: Vec<serde_json::Value> = signal
                .grid
                .iter()
                .zip(&signal.values)
                .map(|(v, z)| serde_json::json!([v, z.re, z.im]))
                .collect();
            let (lo, hi) = signal.domain();
            let doc = serde_json::json!({
                "meta": { "mu": signal.mu, "domain": [lo, hi] },
                "samples": samples,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| CliError::Io(format!("write failed: {e}")))?;
            writeln!(out).map_err(io_err)?;
        }
    }
    Ok(())
}
