//! Deterministic output: 6-significant-digit number formatting, CSV
//! assembly, and JSON rounding. Identical inputs must produce identical
//! bytes, so everything here is pure string work with a fixed layout.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

/// Format with 6 significant digits: positional in a readable exponent
/// range, scientific outside it, trailing zeros trimmed. No thousands
/// separators, '.' as the decimal point.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("always present for {:e}");
    let exp: i32 = exp.parse().expect("valid exponent");
    if (-4..=5).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_decimal(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_decimal(mantissa.to_string()))
    }
}

fn trim_decimal(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Round to 6 significant digits by decimal round trip, for JSON output.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().expect("round-trip")
}

/// Walk a JSON value and round every float to 6 significant digits.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// A CSV document: header plus rows, line-feed terminated.
pub struct Csv {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// The same table as an array of objects, floats re-parsed where they
    /// parse cleanly.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (key, cell) in self.header.iter().zip(row) {
                    let parsed = match cell.as_str() {
                        "true" => Value::Bool(true),
                        "false" => Value::Bool(false),
                        other => other
                            .parse::<f64>()
                            .ok()
                            .and_then(serde_json::Number::from_f64)
                            .map(Value::Number)
                            .unwrap_or_else(|| Value::String(other.to_string())),
                    };
                    object.insert((*key).to_string(), parsed);
                }
                Value::Object(object)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Pretty-printed JSON with all floats rounded to 6 significant digits and
/// a trailing newline.
pub fn render_json(mut value: Value) -> String {
    round_json(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("serializable");
    text.push('\n');
    text
}

/// Write to the path when given, stdout otherwise.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing output to {}", path.display())),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .context("writing to stdout"),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle digits
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(7443.7140853513129), "7443.71");
        assert_eq!(fmt_sig(9.7045667758171008e-2), "0.0970457");
        assert_eq!(fmt_sig(31919.400604029232), "31919.4");
        assert_eq!(fmt_sig(144.0), "144");
        assert_eq!(fmt_sig(5.1553032248989966e-9), "5.1553e-9");
        assert_eq!(fmt_sig(1.2345649e12), "1.23456e12");
        assert_eq!(fmt_sig(-0.0025), "-0.0025");
        assert_eq!(fmt_sig(123456.0), "123456");
        assert_eq!(fmt_sig(1234567.0), "1.23457e6");
    }

    #[test]
    fn json_rounding_applies_to_nested_floats() {
        let mut v = serde_json::json!({
            "a": 9.7045667758171008e-2,
            "b": [1.0f64, 2.3456789012e-7],
            "c": {"d": 5},
        });
        round_json(&mut v);
        assert_eq!(v["a"], serde_json::json!(0.0970457));
        assert_eq!(v["b"][1], serde_json::json!(2.34568e-7));
        assert_eq!(v["c"]["d"], serde_json::json!(5));
    }

    #[test]
    fn csv_layout_is_line_feed_terminated() {
        let mut csv = Csv::new(vec!["x", "y"]);
        csv.push(vec!["1".into(), "2".into()]);
        assert_eq!(csv.render(), "x,y\n1,2\n");
    }
}
