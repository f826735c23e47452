//! Minimal CSV emission and parsing for the battery artifacts. Floats are
//! printed with 17 significant digits so files diff bit-meaningfully and
//! round-trip losslessly through the reader.

use std::path::Path;

use super::ExperimentError;

/// 17 significant digits; infinities and NaN use Rust's parseable spellings.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub fn parse_f64(s: &str) -> Result<f64, ExperimentError> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| ExperimentError::Csv(format!("bad float `{s}`: {e}")))
}

pub fn write_csv(
    path: &Path,
    header: &str,
    rows: impl Iterator<Item = String>,
) -> Result<(), ExperimentError> {
    let mut out = String::with_capacity(4096);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Reads a CSV produced by [`write_csv`]: returns the header and raw fields.
pub fn read_csv(path: &Path) -> Result<(String, Vec<Vec<String>>), ExperimentError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| ExperimentError::Csv("empty csv".into()))?
        .to_string();
    let rows = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|f| f.trim().to_string()).collect())
        .collect();
    Ok((header, rows))
}
