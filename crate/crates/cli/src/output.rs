//! Report emission.
//!
//! Every float is written with 17 significant digits, enough to round-trip
//! any `f64`, so repeated runs can be compared byte for byte.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::CliError;

/// `x` with 17 significant digits: positional notation for moderate
/// exponents, scientific otherwise. Non-finite values map to `NaN`, `inf`
/// and `-inf`.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact single-line JSON followed by a newline. Non-finite floats
/// become `null`.
pub fn to_json<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    report
        .serialize(&mut ser)
        .map_err(|e| CliError::Usage(format!("cannot serialize report: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if !(n.is_i64() || n.is_u64()) => format_f64(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => unreachable!("flattened before formatting"),
    }
}

/// Longest array shown element by element in a text table.
const TEXT_ARRAY_LIMIT: usize = 16;

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>, abbreviate: bool) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out, abbreviate);
            }
        }
        Value::Array(items) if abbreviate && items.len() > TEXT_ARRAY_LIMIT => {
            out.push((prefix.to_string(), format!("[{} values]", items.len())));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out, abbreviate);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn pairs<T: Serialize>(report: &T, abbreviate: bool) -> Result<Vec<(String, String)>, CliError> {
    let value = serde_json::to_value(report).map_err(|e| CliError::Usage(format!("cannot serialize report: {e}")))?;
    let mut out = Vec::new();
    flatten("", &value, &mut out, abbreviate);
    Ok(out)
}

/// Two-column `key  value` table.
pub fn to_text<T: Serialize>(report: &T) -> Result<String, CliError> {
    let rows = pairs(report, true)?;
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    Ok(rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect())
}

/// `key,value` rows with a header.
pub fn to_key_value_csv<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).map_err(csv_error)?;
    for (k, v) in pairs(report, false)? {
        w.write_record([k, v]).map_err(csv_error)?;
    }
    finish_csv(w)
}

/// Table with the given header; cells are already formatted.
pub fn to_table_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("cannot write csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 cells is UTF-8"))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Usage(format!("cannot write csv: {e}"))
}
