//! Report rendering: aligned text, JSON, CSV and Markdown.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

use crate::report::{Report, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv(report),
        Format::Md => markdown(report),
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Column names across all rows, in first-seen order.
fn columns(rows: &[Row]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn grid(rows: &[Row]) -> (Vec<String>, Vec<Vec<String>>) {
    let cols = columns(rows);
    let body = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
        .collect();
    (cols, body)
}

fn params_line(report: &Report) -> String {
    report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={}", cell(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    if !report.params.is_empty() {
        let _ = writeln!(out, "params: {}", params_line(report));
    }
    if !report.results.is_empty() {
        let (cols, body) = grid(&report.results);
        let widths: Vec<usize> = (0..cols.len())
            .map(|i| {
                body.iter()
                    .map(|r| r[i].chars().count())
                    .chain([cols[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&cols));
        for r in &body {
            let _ = writeln!(out, "{}", line(r));
        }
    }
    let _ = writeln!(out, "verified: {}", report.verified);
    for f in &report.failures {
        let _ = writeln!(out, "FAIL {}: {}", f.check, f.detail);
    }
    out
}

fn csv(report: &Report) -> String {
    let (cols, body) = grid(&report.results);
    let mut w = ::csv::Writer::from_writer(Vec::new());
    if !cols.is_empty() {
        w.write_record(&cols).expect("in-memory write");
    }
    for r in &body {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## {}\n", report.command);
    if !report.params.is_empty() {
        let _ = writeln!(out, "Parameters: `{}`\n", params_line(report));
    }
    if !report.results.is_empty() {
        let (cols, body) = grid(&report.results);
        let _ = writeln!(out, "| {} |", cols.iter().map(|c| md_escape(c)).collect::<Vec<_>>().join(" | "));
        let _ = writeln!(out, "|{}|", vec!["---"; cols.len()].join("|"));
        for r in &body {
            let _ = writeln!(out, "| {} |", r.iter().map(|c| md_escape(c)).collect::<Vec<_>>().join(" | "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "Verified: **{}**", report.verified);
    if !report.failures.is_empty() {
        out.push('\n');
        for f in &report.failures {
            let _ = writeln!(out, "- `{}`: {}", md_escape(&f.check), md_escape(&f.detail));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::row;

    fn sample() -> Report {
        let mut r = Report::new("demo").param("base", 12);
        r.push(row! { "kind" => "fixed", "elements" => vec![1, 29, 125] });
        r.push(row! { "kind" => "cycle", "elements" => vec![5, 25], "note" => "a|b" });
        r
    }

    #[test]
    fn text_is_aligned() {
        let t = render(&sample(), Format::Text);
        assert!(t.contains("kind   elements  note"));
        assert!(t.contains("fixed  1 29 125"));
        assert!(t.ends_with("verified: true\n"));
    }

    #[test]
    fn csv_fills_missing_cells() {
        let c = render(&sample(), Format::Csv);
        assert_eq!(c, "kind,elements,note\nfixed,1 29 125,\ncycle,5 25,a|b\n");
    }

    #[test]
    fn markdown_escapes_pipes() {
        let m = render(&sample(), Format::Md);
        assert!(m.contains("| cycle | 5 25 | a\\|b |"));
    }
}
