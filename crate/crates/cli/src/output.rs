//! Report rendering. Every report is a JSON document with `command`,
//! `inputs`, `result` and `meta`; the CSV rendering carries the same
//! numbers after a `#`-prefixed JSON header line.

use ginicor::simulate::round_significant;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

pub const DIGITS: usize = 12;

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// Explicit tabular form for CSV output; derived from `result` otherwise.
    pub table: Option<(Vec<String>, Vec<Vec<Value>>)>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, result: impl Serialize) -> Report {
        Report {
            command: command.to_string(),
            inputs: round(inputs),
            result: round(serde_json::to_value(result).expect("report values serialize")),
            table: None,
        }
    }

    pub fn with_table(mut self, columns: Vec<String>, rows: Vec<Vec<Value>>) -> Report {
        let rows = rows.into_iter().map(|r| r.into_iter().map(round).collect()).collect();
        self.table = Some((columns, rows));
        self
    }

    fn meta() -> Value {
        json!({ "name": "ginicor", "version": env!("CARGO_PKG_VERSION") })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "inputs": self.inputs,
                    "result": self.result,
                    "meta": Self::meta(),
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let header = json!({ "command": self.command, "inputs": self.inputs, "meta": Self::meta() });
                let (columns, rows) = match &self.table {
                    Some(t) => t.clone(),
                    None => tabulate(&self.result),
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&columns).expect("csv write to memory");
                for row in &rows {
                    w.write_record(row.iter().map(cell)).expect("csv write to memory");
                }
                let body = String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8");
                format!("# {header}\n{body}")
            }
        }
    }
}

/// Rounds every non-integer number to 12 significant digits.
pub fn round(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_significant(x, DIGITS)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round(v))).collect()),
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(o) => {
            for (k, inner) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

/// An object becomes one row; an array of objects one row per element.
fn tabulate(result: &Value) -> (Vec<String>, Vec<Vec<Value>>) {
    let items: Vec<&Value> = match result {
        Value::Array(a) => a.iter().collect(),
        other => vec![other],
    };
    let mut columns: Vec<String> = Vec::new();
    let mut flat = Vec::new();
    for item in items {
        let mut m = Map::new();
        flatten(if item.is_object() { "" } else { "value" }, item, &mut m);
        for k in m.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
        flat.push(m);
    }
    let rows = flat
        .iter()
        .map(|m| {
            columns
                .iter()
                .map(|c| m.get(c).cloned().unwrap_or(Value::Null))
                .collect()
        })
        .collect();
    (columns, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_integers() {
        let v = round(json!({ "seed": u64::MAX, "x": 0.1234567890123456, "n": 3 }));
        assert_eq!(v["seed"], json!(u64::MAX));
        assert_eq!(v["x"], json!(0.123456789012));
        assert_eq!(v["n"], json!(3));
    }

    #[test]
    fn csv_numbers_match_json() {
        let r = Report::new(
            "t",
            json!({}),
            json!({ "a": 2.0f64 / 3.0, "v": [1.5, 2.5], "s": { "k": 1 } }),
        );
        let csv = r.render(Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# {"));
        assert_eq!(lines[1], "a,s.k,v");
        assert_eq!(lines[2], "0.666666666667,1,1.5;2.5");
        assert!(r.render(Format::Json).contains("0.666666666667"));
    }
}
