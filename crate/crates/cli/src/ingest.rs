//! CSV ingestion and emission.
//!
//! Single-series files carry a header naming a `price` or `value` column
//! (other columns are allowed; a `date` column becomes timestamps in price
//! mode). Panel files are headerless comma-separated matrices, one variable
//! per row. Floats are written with 17 significant digits so re-ingesting a
//! generated file reproduces the same bits.

use crate::error::{at, CliError};
use fluctus_core::generators::SeriesPanel;
use fluctus_core::{PriceSeries, Series};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug)]
pub enum SeriesFile {
    Prices(PriceSeries),
    Values(Series),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse_err(path: &Path, line: usize, detail: String) -> CliError {
    CliError::Parse {
        path: path.to_owned(),
        line,
        detail,
    }
}

fn parse_cell(path: &Path, line: usize, cell: &str) -> Result<f64, CliError> {
    let text = cell.trim();
    let v: f64 = text
        .parse()
        .map_err(|_| parse_err(path, line, format!("malformed number `{text}`")))?;
    if !v.is_finite() {
        return Err(parse_err(path, line, format!("non-finite value `{text}`")));
    }
    Ok(v)
}

pub fn read_series(path: &Path) -> Result<SeriesFile, CliError> {
    let text = read(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_idx, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file".into()))?;
    let columns: Vec<String> = header
        .split(',')
        .map(|c| c.trim().to_ascii_lowercase())
        .collect();
    let date_col = columns.iter().position(|c| c == "date");
    let (col, price_mode) = match (
        columns.iter().position(|c| c == "price"),
        columns.iter().position(|c| c == "value"),
    ) {
        (Some(_), Some(_)) => {
            return Err(parse_err(
                path,
                header_idx + 1,
                "header names both `price` and `value`".into(),
            ))
        }
        (Some(i), None) => (i, true),
        (None, Some(i)) => (i, false),
        (None, None) => {
            return Err(parse_err(
                path,
                header_idx + 1,
                "header must name a `price` or `value` column".into(),
            ))
        }
    };

    let need = 1 + col.max(date_col.unwrap_or(0));
    let mut values = Vec::new();
    let mut dates = Vec::new();
    for (idx, row) in lines {
        let line = idx + 1;
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() < need {
            return Err(parse_err(
                path,
                line,
                format!("expected at least {need} columns, got {}", cells.len()),
            ));
        }
        let v = parse_cell(path, line, cells[col])?;
        if price_mode && v <= 0.0 {
            return Err(parse_err(path, line, format!("nonpositive price {v}")));
        }
        values.push(v);
        if price_mode {
            if let Some(d) = date_col {
                dates.push(cells[d].trim().to_owned());
            }
        }
    }

    if price_mode {
        let stamps = date_col.map(|_| dates);
        Ok(SeriesFile::Prices(
            PriceSeries::with_timestamps(values, stamps).map_err(at("ingest"))?,
        ))
    } else {
        Ok(SeriesFile::Values(Series::new(values).map_err(at("ingest"))?))
    }
}

pub fn read_panel(path: &Path) -> Result<SeriesPanel, CliError> {
    let text = read(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected = 0usize;
    for (idx, row) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let line = idx + 1;
        let mut parsed = Vec::with_capacity(expected);
        for cell in row.split(',') {
            parsed.push(parse_cell(path, line, cell)?);
        }
        if rows.is_empty() {
            expected = parsed.len();
        } else if parsed.len() != expected {
            return Err(parse_err(
                path,
                line,
                format!("row has {} columns, expected {expected}", parsed.len()),
            ));
        }
        rows.push(parsed);
    }
    SeriesPanel::from_rows(rows).map_err(at("ingest"))
}

pub fn write_series_csv(path: &Path, values: &[f64]) -> Result<(), CliError> {
    let mut text = String::with_capacity(values.len() * 26 + 8);
    text.push_str("value\n");
    for v in values {
        let _ = writeln!(text, "{v:.16e}");
    }
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
