//! Deterministic JSON and CSV emission.
//!
//! Every float is written in scientific notation with nine significant digits;
//! infinite sensitivities appear as the string `"inf"`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Nine significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x:.8e}")
    }
}

fn write_number(out: &mut String, n: &serde_json::Number) {
    match (n.as_u64(), n.as_i64(), n.as_f64()) {
        (Some(u), _, _) => write!(out, "{u}").unwrap(),
        (None, Some(i), _) => write!(out, "{i}").unwrap(),
        (None, None, Some(f)) => out.push_str(&format_float(f)),
        _ => out.push_str(&n.to_string()),
    }
}

fn write_string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, level: usize| out.extend(std::iter::repeat_n(' ', 2 * level));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => write!(out, "{b}").unwrap(),
        Value::Number(n) => write_number(out, n),
        Value::String(s) => write_string(out, s),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                write_string(out, key);
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty JSON with fixed float formatting and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let tree = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &tree, 0);
    out.push('\n');
    Ok(out)
}

/// CSV table: one header row, then one row of formatted numbers per record.
pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Internal(e.to_string());
    writer.write_record(header).map_err(csv_err)?;
    for row in rows {
        writer
            .write_record(row.iter().map(|&x| format_float(x)))
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
