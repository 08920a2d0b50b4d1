//! Deterministic JSON reports and two-column plot files.

use crate::error::CliError;
use serde::{Serialize, Serializer};
use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::str::FromStr;

/// Report float, serialized as a `{:.16e}` JSON number literal (17
/// significant digits): re-parsing reproduces the exact bits, and identical
/// runs emit identical bytes.
#[derive(Debug, Clone, Copy)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&format!("{:.16e}", self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

pub fn floats(values: &[f64]) -> Vec<Float17> {
    values.iter().copied().map(Float17).collect()
}

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
struct Report<C, R> {
    tool: Tool,
    config: C,
    results: R,
    warnings: Vec<String>,
}

pub fn render<C: Serialize, R: Serialize>(
    config: C,
    results: R,
    warnings: Vec<String>,
) -> Result<String, CliError> {
    let report = Report {
        tool: Tool {
            name: "fluctus",
            version: env!("CARGO_PKG_VERSION"),
        },
        config,
        results,
        warnings,
    };
    serde_json::to_string_pretty(&report).map_err(CliError::Render)
}

/// Stable tag tying plot files to the generating configuration.
pub fn config_hash<C: Serialize>(config: &C) -> u64 {
    let text = serde_json::to_string(config).unwrap_or_default();
    let mut hasher = DefaultHasher::new();
    text.hash(&mut hasher);
    hasher.finish()
}

/// Two whitespace-separated columns under a single `#` header line.
pub fn emit_plot_data(
    path: &Path,
    quantity: &str,
    hash: u64,
    x: &[f64],
    y: &[f64],
) -> Result<(), CliError> {
    debug_assert!(!x.is_empty() && x.len() == y.len());
    let mut text = String::with_capacity(x.len() * 50 + 64);
    let _ = writeln!(text, "# {quantity} config={hash:016x}");
    for (a, b) in x.iter().zip(y) {
        let _ = writeln!(text, "{a:.16e} {b:.16e}");
    }
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
