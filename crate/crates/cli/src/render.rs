//! Output rendering. JSON is the payload itself, one line per command.
//! Table and CSV flatten nested objects to dotted keys; arrays of objects
//! become row tables.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

pub struct Rendered {
    payload: Value,
    /// Replaces the generic table rendering, e.g. the family text format.
    text: Option<String>,
}

impl Rendered {
    pub fn new(payload: Value) -> Self {
        Rendered { payload, text: None }
    }

    pub fn with_text(payload: Value, text: String) -> Self {
        Rendered { payload, text: Some(text) }
    }

    pub fn enveloped(self, command: &str, argv: &[String], seed: u64) -> Self {
        let payload = json!({
            "command": command,
            "parameters": {"argv": argv, "seed": seed},
            "payload": self.payload,
            "status": 0,
        });
        Rendered { payload, text: self.text }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.payload),
            Format::Table => match &self.text {
                Some(t) => t.clone(),
                None => table(&self.payload),
            },
            Format::Csv => csv_text(&self.payload),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn is_row_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// Scalar leaves under dotted keys, plus the row tables found along the way.
fn flatten<'a>(
    prefix: &str,
    obj: &'a Map<String, Value>,
    pairs: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, &'a Value)>,
) {
    for (k, v) in obj {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => flatten(&key, inner, pairs, tables),
            _ if is_row_table(v) => tables.push((key, v)),
            _ => pairs.push((key, cell(v))),
        }
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(|o| o.keys()) {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn row_cells(rows: &[Value], cols: &[String]) -> Vec<Vec<String>> {
    rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect()
}

fn table(v: &Value) -> String {
    match v {
        Value::Object(obj) => {
            let (mut pairs, mut tables) = (Vec::new(), Vec::new());
            flatten("", obj, &mut pairs, &mut tables);
            let key_w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out: String = pairs.iter().map(|(k, v)| format!("{k:<key_w$}  {v}\n")).collect();
            for (name, t) in tables {
                let rows = t.as_array().expect("row table");
                let cols = columns(rows);
                out.push_str(&format!("\n[{name}]\n"));
                out.push_str(&grid(&cols, &row_cells(rows, &cols)));
            }
            out
        }
        Value::Array(rows) if is_row_table(v) => {
            let cols = columns(rows);
            grid(&cols, &row_cells(rows, &cols))
        }
        other => format!("{}\n", cell(other)),
    }
}

/// CSV of the first row table if the payload has one, else `key,value` pairs.
fn csv_text(v: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let (header, rows) = match v {
        Value::Array(rows) if is_row_table(v) => {
            let cols = columns(rows);
            let cells = row_cells(rows, &cols);
            (cols, cells)
        }
        Value::Object(obj) => {
            let (mut pairs, mut tables) = (Vec::new(), Vec::new());
            flatten("", obj, &mut pairs, &mut tables);
            match tables.first() {
                Some((_, t)) => {
                    let rows = t.as_array().expect("row table");
                    let cols = columns(rows);
                    let cells = row_cells(rows, &cols);
                    (cols, cells)
                }
                None => (vec!["key".into(), "value".into()], pairs.into_iter().map(|(k, v)| vec![k, v]).collect()),
            }
        }
        other => (vec!["value".into()], vec![vec![cell(other)]]),
    };
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}
