//! Report output: canonical JSON, or aligned text with `--pretty`.

use serde_json::Value;

use crate::commands::RunReport;

pub fn json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(rows) if rows.iter().all(|r| r.as_array().is_some_and(|c| c.iter().all(|x| !x.is_array() && !x.is_object()))) => {
            Some(format!("[{}]", rows.iter().filter_map(scalar).collect::<Vec<_>>().join("; ")))
        }
        Value::Object(m) if m.values().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "{{{}}}",
            m.iter().map(|(k, x)| format!("{k}: {}", scalar(x).unwrap_or_default())).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

/// Rows of an array of objects as an aligned table over their scalar fields.
fn table(prefix: &str, items: &[Value], out: &mut Vec<String>) {
    let mut cols: Vec<String> = Vec::new();
    for it in items {
        if let Value::Object(m) = it {
            for (k, v) in m {
                if scalar(v).is_some() && !v.is_array() && !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|it| cols.iter().map(|c| it.get(c).and_then(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> =
        cols.iter().enumerate().map(|(i, c)| rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0)).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    out.push(format!("{prefix}:"));
    out.push(line(&cols));
    for r in &rows {
        out.push(line(r));
    }
}

fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
    if let Some(s) = scalar(v) {
        out.push(format!("{prefix}: {s}"));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) => table(prefix, items, out),
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {}
    }
}

pub fn pretty(report: &RunReport) -> String {
    let mut out = vec![format!("command: {}", report.command), format!("exit: {}", report.exit_code)];
    if !report.result.is_null() {
        walk("", &report.result, &mut out);
    }
    for d in &report.diagnostics {
        walk("diagnostic", d, &mut out);
    }
    out.push(format!("sha256: {}", report.digest));
    let mut s = out.join("\n");
    s.push('\n');
    s
}
