//! Plain-text rendering of JSON reports.

use std::fmt::Write as _;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.4}", n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Rows of scalars, rendered as a right-aligned table.
fn matrix(rows: &[Value], row_labels: Option<&[Value]>) -> Option<Vec<Vec<String>>> {
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let cells = r.as_array()?;
        if !cells.iter().all(is_scalar) {
            return None;
        }
        let mut line: Vec<String> = Vec::new();
        if let Some(labels) = row_labels {
            line.push(labels.get(i).map(scalar).unwrap_or_default());
        }
        line.extend(cells.iter().map(scalar));
        out.push(line);
    }
    Some(out)
}

fn write_table(out: &mut String, indent: usize, header: Option<Vec<String>>, rows: Vec<Vec<String>>) {
    let all: Vec<&Vec<String>> = header.iter().chain(&rows).collect();
    let cols = all.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| all.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for row in all {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        writeln!(out, "{:indent$}{}", "", cells.join("  ").trim_end()).unwrap();
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize, labels: Option<&[Value]>) {
    match v {
        Value::Object(map) => {
            let labels = map.get("labels").and_then(Value::as_array).map(Vec::as_slice).or(labels);
            for (k, child) in map {
                if is_scalar(child) {
                    writeln!(out, "{:indent$}{k}: {}", "", scalar(child)).unwrap();
                    continue;
                }
                if let Value::Array(items) = child {
                    if items.iter().all(is_scalar) {
                        let line: Vec<String> = items.iter().map(scalar).collect();
                        writeln!(out, "{:indent$}{k}: [{}]", "", line.join(", ")).unwrap();
                        continue;
                    }
                    let square = labels.filter(|l| l.len() == items.len());
                    if let Some(rows) = matrix(items, square) {
                        writeln!(out, "{:indent$}{k}:", "").unwrap();
                        let header = square.map(|l| {
                            std::iter::once(String::new()).chain(l.iter().map(scalar)).collect()
                        });
                        write_table(out, indent + 2, header, rows);
                        continue;
                    }
                }
                writeln!(out, "{:indent$}{k}:", "").unwrap();
                render_into(out, child, indent + 2, labels);
            }
        }
        Value::Array(items) => {
            for item in items {
                writeln!(out, "{:indent$}-", "").unwrap();
                render_into(out, item, indent + 2, labels);
            }
        }
        other => writeln!(out, "{:indent$}{}", "", scalar(other)).unwrap(),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0, None);
    out
}

fn csv_table(labels: &[Value], rows: &[Value]) -> String {
    let mut out = String::from("gold\\predicted");
    for l in labels {
        write!(out, ",{}", scalar(l)).unwrap();
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(rows) {
        out.push_str(&scalar(l));
        for c in row.as_array().into_iter().flatten() {
            write!(out, ",{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn collect_csvs(v: &Value, path: &str, out: &mut Vec<(String, String)>) {
    let Value::Object(map) = v else { return };
    if let (Some(Value::Array(labels)), Some(Value::Array(counts)), Some(Value::Array(norm))) =
        (map.get("labels"), map.get("counts"), map.get("normalized"))
    {
        if counts.len() == labels.len() {
            out.push((format!("{path}.csv"), csv_table(labels, counts)));
            out.push((format!("{path}_normalized.csv"), csv_table(labels, norm)));
            return;
        }
    }
    for (k, child) in map {
        let name = if path.is_empty() { k.clone() } else { format!("{path}_{k}") };
        collect_csvs(child, &name, out);
    }
}

/// `(file name, CSV)` for every confusion matrix in the report.
pub fn confusion_csvs(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    collect_csvs(v, "", &mut out);
    out
}
