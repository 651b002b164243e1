use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use mixhom_core::format::collapse_flat_arrays;

use crate::args::FormatArg;
use crate::input::InputSummary;

#[derive(Serialize)]
pub struct Envelope {
    pub command: String,
    pub input: Option<InputSummary>,
    /// `None` for pure computations with nothing to verify.
    pub holds: Option<bool>,
    pub result: Value,
}

impl Envelope {
    pub fn exit_code(&self) -> u8 {
        match self.holds {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: FormatArg, trusted_only: bool) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if trusted_only {
            drop_untrusted(&mut v);
        }
        match format {
            FormatArg::Json => {
                let pretty = serde_json::to_string_pretty(&v).expect("reports serialize");
                let mut s = collapse_flat_arrays(&pretty);
                s.push('\n');
                s
            }
            FormatArg::Table => {
                let mut out = String::new();
                render_value(&mut out, None, &v, 0);
                out
            }
        }
    }
}

/// Removes array entries that are objects marked `"trusted": false`.
pub fn drop_untrusted(v: &mut Value) {
    match v {
        Value::Array(items) => {
            items.retain(|x| x.get("trusted") != Some(&Value::Bool(false)));
            items.iter_mut().for_each(drop_untrusted);
        }
        Value::Object(m) => m.values_mut().for_each(drop_untrusted),
        _ => {}
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("({})", parts.join(", "))
        }
        Value::Array(items) if is_matrix(v) => {
            let cols = items.first().and_then(Value::as_array).map_or(0, Vec::len);
            format!("<{}x{} matrix>", items.len(), cols)
        }
        Value::Array(items) => format!("<{} items>", items.len()),
        Value::Object(m) => format!("<{} fields>", m.len()),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_matrix(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        !rows.is_empty()
            && rows
                .iter()
                .all(|r| r.as_array().is_some_and(|r| r.iter().all(is_scalar)))
    })
}

/// Flat enough to show in one cell.
fn is_cell(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar) || is_matrix(v),
        Value::Object(_) => false,
        _ => true,
    }
}

/// An array of objects whose fields all fit in cells.
fn as_rows(v: &Value) -> Option<&Vec<Value>> {
    let items = v.as_array()?;
    (!items.is_empty()
        && items
            .iter()
            .all(|x| x.as_object().is_some_and(|m| m.values().all(is_cell))))
    .then_some(items)
}

fn render_table(out: &mut String, items: &[Value], indent: usize) {
    let mut headers: Vec<&String> = Vec::new();
    for m in items.iter().filter_map(Value::as_object) {
        for k in m.keys() {
            if !headers.contains(&k) {
                headers.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|x| {
            headers
                .iter()
                .map(|h| x.get(h.as_str()).map_or_else(|| "-".into(), scalar_text))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    // Text columns read better flush left, numbers flush right.
    let numeric: Vec<bool> = (0..headers.len())
        .map(|i| items.iter().all(|x| !x.get(headers[i].as_str()).is_some_and(Value::is_string)))
        .collect();
    let pad = " ".repeat(indent);
    let line = |row: Vec<&str>| -> String {
        let parts: Vec<String> = row
            .iter()
            .zip(widths.iter().zip(&numeric))
            .map(|(c, (w, &right))| if right { format!("{c:>w$}") } else { format!("{c:<w$}") })
            .collect();
        format!("{pad}{}", parts.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(headers.iter().map(|h| h.as_str()).collect()));
    for row in &cells {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
}

fn render_value(out: &mut String, key: Option<&str>, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let label = key.map(|k| format!("{k}: ")).unwrap_or_default();
    if is_cell(v) {
        let _ = writeln!(out, "{pad}{label}{}", scalar_text(v));
        return;
    }
    if let Some(k) = key {
        let _ = writeln!(out, "{pad}{k}:");
    }
    let inner = if key.is_some() { indent + 2 } else { indent };
    if let Some(items) = as_rows(v) {
        render_table(out, items, inner);
        return;
    }
    match v {
        Value::Object(m) => render_object(out, m, inner),
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render_value(out, Some(&format!("[{i}]")), x, inner);
            }
        }
        _ => unreachable!("scalars are cells"),
    }
}

fn render_object(out: &mut String, m: &Map<String, Value>, indent: usize) {
    for (k, v) in m {
        render_value(out, Some(k), v, indent);
    }
}
