//! Deterministic serialization: a minimal JSON document model and the
//! two-column CSV field format.
//!
//! Floats are written with fixed precision so identical inputs always
//! produce identical bytes: 17 significant digits in JSON (round-trip safe
//! for f64) and 12 in CSV. JSON objects keep their keys sorted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::lattice::{FieldConfig, Grid, LatticeError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {reason}")]
    Malformed {
        path: String,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Round-trip-safe float rendering for JSON payloads.
pub fn fmt_f64_json(x: f64) -> String {
    format!("{x:.16e}")
}

/// Fixed 12-significant-digit float rendering for CSV tables.
pub fn fmt_f64_csv(x: f64) -> String {
    format!("{x:.11e}")
}

/// A JSON document assembled in memory and rendered with sorted keys.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<JsonValue>),
    Object(BTreeMap<String, JsonValue>),
}

impl JsonValue {
    pub fn object(entries: impl IntoIterator<Item = (String, JsonValue)>) -> Self {
        Self::Object(entries.into_iter().collect())
    }

    /// Pretty-prints with two-space indentation and no trailing newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        match self {
            Self::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Self::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Self::Float(x) => out.push_str(&fmt_f64_json(*x)),
            Self::Str(s) => push_escaped(out, s),
            Self::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, depth + 1);
                    item.render_into(out, depth + 1);
                }
                out.push('\n');
                push_indent(out, depth);
                out.push(']');
            }
            Self::Object(map) => {
                if map.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (k, (key, value)) in map.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, depth + 1);
                    push_escaped(out, key);
                    out.push_str(": ");
                    value.render_into(out, depth + 1);
                }
                out.push('\n');
                push_indent(out, depth);
                out.push('}');
            }
        }
    }
}

fn push_indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn push_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Writes a field as two-column CSV with header `x,value` and Unix newlines.
pub fn write_field_csv(path: &Path, config: &FieldConfig) -> Result<(), IoError> {
    let mut out = String::from("x,value\n");
    for (x, v) in config.grid().positions().zip(config.values()) {
        out.push_str(&fmt_f64_csv(x));
        out.push(',');
        out.push_str(&fmt_f64_csv(*v));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a two-column field CSV back, rebuilding the uniform grid from the
/// node positions. Rejects non-uniform spacing.
pub fn read_field_csv(path: &Path) -> Result<FieldConfig, IoError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path)?;
    let malformed = |line: usize, reason: String| IoError::Malformed {
        path: shown.clone(),
        line,
        reason,
    };

    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "x,value" => {}
        Some((_, header)) => {
            return Err(malformed(1, format!("expected header 'x,value', got '{header}'")));
        }
        None => return Err(malformed(1, "empty file".into())),
    }

    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (x_str, v_str) = line
            .split_once(',')
            .ok_or_else(|| malformed(idx + 1, "expected two comma-separated columns".into()))?;
        let x: f64 = x_str
            .trim()
            .parse()
            .map_err(|_| malformed(idx + 1, format!("invalid x value '{}'", x_str.trim())))?;
        let v: f64 = v_str
            .trim()
            .parse()
            .map_err(|_| malformed(idx + 1, format!("invalid field value '{}'", v_str.trim())))?;
        xs.push(x);
        values.push(v);
    }
    if xs.len() < 3 {
        return Err(malformed(
            xs.len() + 1,
            format!("need at least 3 rows for a grid, got {}", xs.len()),
        ));
    }

    let grid = Grid::new(xs[0], xs[xs.len() - 1], xs.len())?;
    let dx = grid.spacing();
    for (j, &x) in xs.iter().enumerate() {
        if (x - grid.position(j)).abs() > 1e-6 * dx {
            return Err(malformed(
                j + 2,
                format!("node {x} breaks uniform spacing {dx}"),
            ));
        }
    }
    Ok(FieldConfig::new(grid, values)?)
}
