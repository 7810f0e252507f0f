//! Bit-exact CSV text for entropy series and first-drop scans.

use std::path::Path;

use walk_core::analysis::FirstDrop;
use walk_core::EntropySeries;

use crate::error::CliError;

pub const SERIES_HEADER: &str = "tau,entropy";
pub const SCAN_HEADER: &str = "T,first_drop_tau";

/// Fixed-point decimal with 12 significant digits, e.g. `0.693147180560`.
pub fn format_significant(x: f64) -> String {
    // Normalize -0.0 so an exact zero always prints the same way.
    let x = if x == 0.0 { 0.0 } else { x };
    if !x.is_finite() {
        return x.to_string();
    }
    // The exponent after rounding to 12 digits decides how many decimals remain.
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn series_csv(series: &EntropySeries) -> String {
    let mut out = String::with_capacity(24 * (series.len() + 1));
    out.push_str(SERIES_HEADER);
    out.push('\n');
    for (tau, v) in series.values.iter().enumerate() {
        out.push_str(&format!("{tau},{}\n", format_significant(*v)));
    }
    out
}

pub fn scan_csv(points: &[FirstDrop]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for p in points {
        let drop = p.first_drop.map_or_else(|| "none".to_string(), |d| d.to_string());
        out.push_str(&format!("{},{drop}\n", p.transparency));
    }
    out
}

pub fn write_series_csv(series: &EntropySeries, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, series_csv(series)).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Entropy values from text produced by [`series_csv`]; rows must be in step order.
pub fn parse_series_csv(text: &str) -> Result<Vec<f64>, CliError> {
    let mut lines = text.lines();
    if lines.next() != Some(SERIES_HEADER) {
        return Err(CliError::Usage(format!("expected header '{SERIES_HEADER}'")));
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let bad = || CliError::Usage(format!("malformed row {}: '{line}'", k + 2));
            let (tau, value) = line.split_once(',').ok_or_else(bad)?;
            if tau.parse::<usize>().map_err(|_| bad())? != k {
                return Err(bad());
            }
            value.parse().map_err(|_| bad())
        })
        .collect()
}
