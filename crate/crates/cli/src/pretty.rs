//! Plain-text rendering of result documents for `--pretty`.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        // [re, im] pairs read as one complex number; integer pairs such as shapes stay lists
        Value::Array(p) if p.len() == 2 && p.iter().all(Value::is_number) && p.iter().any(Value::is_f64) => {
            let (re, im) = (p[0].as_f64().unwrap_or(f64::NAN), p[1].as_f64().unwrap_or(f64::NAN));
            Some(if im == 0.0 { format!("{re}") } else { format!("{re}{im:+}i") })
        }
        _ => None,
    }
}

fn row(v: &Value) -> Option<Vec<String>> {
    v.as_array()?.iter().map(scalar).collect()
}

fn table(rows: &[Vec<String>], indent: &str, out: &mut String) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(indent);
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if let Some(s) = scalar(x) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else if let Some(r) = row(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", r.join(" ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    walk(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            let rows: Option<Vec<Vec<String>>> = items.iter().map(row).collect();
            match rows {
                Some(rows) if !rows.is_empty() => table(&rows, &pad, out),
                _ => {
                    for (i, x) in items.iter().enumerate() {
                        match scalar(x) {
                            Some(s) => out.push_str(&format!("{pad}{s}\n")),
                            None => {
                                out.push_str(&format!("{pad}[{i}]\n"));
                                walk(x, indent + 1, out);
                            }
                        }
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_align() {
        let s = render(&json!({ "x": [["1", "-1/2"], ["10", "3"]] }));
        assert_eq!(s, "x:\n   1  -1/2\n  10     3\n");
    }

    #[test]
    fn complex_pairs_read_inline() {
        assert_eq!(render(&json!({ "z": [1.5, -2.0] })), "z: 1.5-2i\n");
    }
}
