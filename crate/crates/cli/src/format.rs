//! Matrix files, gamma grids and fixed-precision number rendering.
//!
//! A matrix file is JSON with exactly two keys:
//!
//! ```json
//! { "dim": 2, "entries": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]] }
//! ```
//!
//! `entries` lists the `dim * dim` matrix entries in row-major order, each as
//! a `[re, im]` pair of JSON numbers.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex64;
use qutrit_gain_core::ComplexMatrix;
use serde::{Deserialize, Serialize};

/// Significant digits used for every printed number.
pub const SIGNIFICANT_DIGITS: i32 = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { dim: m.rows(), entries: m.data().iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: MatrixFile = serde_json::from_str(text)
            .map_err(|e| ParseError(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if file.dim == 0 {
            return Err(ParseError("\"dim\" must be at least 1".into()));
        }
        let expected = file.dim * file.dim;
        if file.entries.len() != expected {
            return Err(ParseError(format!(
                "\"entries\" has {} pairs but dim = {} needs {expected}; first bad position is entry {}",
                file.entries.len(),
                file.dim,
                file.entries.len().min(expected)
            )));
        }
        if let Some(pos) = file.entries.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
            return Err(ParseError(format!("entry {pos} is not finite")));
        }
        Ok(file)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let data = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(self.dim, self.dim, data).expect("validated at parse time")
    }

    /// Pretty JSON, one matrix row per line.
    pub fn to_json(&self) -> String {
        let mut s = format!("{{\n  \"dim\": {},\n  \"entries\": [\n", self.dim);
        for (i, row) in self.entries.chunks(self.dim.max(1)).enumerate() {
            let cells: Vec<String> = row.iter().map(|[re, im]| format!("[{re:?}, {im:?}]")).collect();
            let sep = if i + 1 == self.dim { "" } else { "," };
            let _ = writeln!(s, "    {}{sep}", cells.join(", "));
        }
        s.push_str("  ]\n}\n");
        s
    }
}

/// Renders `x` with [`SIGNIFICANT_DIGITS`] significant digits in plain
/// decimal notation. Zero prints as `0.000000000000`.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let exponent = if x == 0.0 { -1 } else { x.abs().log10().floor() as i32 };
    let mut decimals = (SIGNIFICANT_DIGITS - 1 - exponent).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit (9.99.. -> 10.0..)
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded != 0.0 && rounded.abs().log10().floor() as i32 > exponent && decimals > 0 {
        decimals -= 1;
        s = format!("{x:.decimals$}");
    }
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s.remove(0);
    }
    s
}

pub fn format_complex(z: Complex64) -> String {
    format!("[{}, {}]", format_sig(z.re), format_sig(z.im))
}

/// One line per row, entries as `[re, im]`.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m.get(i, j))).collect();
        let _ = writeln!(s, "  {}", row.join(" "));
    }
    s
}

const MAX_GRID_POINTS: usize = 1_000_000;

/// Parses `start:end:step` or a comma-separated list. The result is sorted
/// ascending without duplicates; range checks against `[0, 1]` are left to
/// the caller.
pub fn parse_gamma_grid(spec: &str) -> Result<Vec<f64>, String> {
    let number = |t: &str| -> Result<f64, String> {
        let t = t.trim();
        let v: f64 = t.parse().map_err(|_| format!("invalid number {t:?} in gamma grid"))?;
        if !v.is_finite() {
            return Err(format!("non-finite value {t:?} in gamma grid"));
        }
        Ok(v)
    };
    let mut values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range grid must be start:end:step, got {spec:?}"));
        }
        let (start, end, step) = (number(parts[0])?, number(parts[1])?, number(parts[2])?);
        if step <= 0.0 {
            return Err(format!("grid step must be positive, got {step}"));
        }
        if end < start {
            return Err(format!("grid end {end} is below start {start}"));
        }
        let steps = ((end - start) / step + 1e-9).floor();
        if steps >= MAX_GRID_POINTS as f64 {
            return Err(format!("grid would have more than {MAX_GRID_POINTS} points"));
        }
        let mut v: Vec<f64> = (0..=steps as usize).map(|k| start + k as f64 * step).collect();
        if let Some(last) = v.last_mut() {
            if (*last - end).abs() <= 1e-9 * step.max(1.0) {
                *last = end;
            }
        }
        v
    } else {
        spec.split(',').map(number).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err("gamma grid is empty".into());
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}
