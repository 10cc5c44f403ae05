use std::fmt::Write as _;

use serde_json::Value;

/// Arrays longer than this are summarized instead of listed.
const MAX_LISTED: usize = 8;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn walk(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            if !key.is_empty() {
                let _ = writeln!(out, "{pad}{key}:");
            }
            let d = if key.is_empty() { depth } else { depth + 1 };
            for (k, x) in map {
                walk(out, k, x, d);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            if items.len() <= MAX_LISTED {
                let list: Vec<String> = items.iter().map(scalar).collect();
                let _ = writeln!(out, "{pad}{key}: [{}]", list.join(", "));
            } else {
                let first = items.first().map(scalar).unwrap_or_default();
                let last = items.last().map(scalar).unwrap_or_default();
                let _ = writeln!(out, "{pad}{key}: {} values, {first} .. {last}", items.len());
            }
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}: {} entries", items.len());
            for (i, x) in items.iter().enumerate().take(MAX_LISTED) {
                walk(out, &format!("[{i}]"), x, depth + 1);
            }
            if items.len() > MAX_LISTED {
                let _ = writeln!(out, "{pad}  ...");
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(v));
        }
    }
}

/// Indented text view of a JSON report. Long arrays are shortened.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    if let Some(cmd) = value.get("command").and_then(Value::as_str) {
        let _ = writeln!(out, "== {cmd} ==");
    }
    match value {
        Value::Object(map) => {
            for (k, x) in map.iter().filter(|(k, _)| k.as_str() != "command") {
                walk(&mut out, k, x, 0);
            }
        }
        other => walk(&mut out, "value", other, 0),
    }
    out
}
