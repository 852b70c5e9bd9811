//! Output formatting: plain text tables, TeX tabular rows, and a stable
//! JSON schema (`reflect/1`) with all numbers as exact strings.

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Tex,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "tex" => Ok(Format::Tex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected plain|tex|json)")),
        }
    }
}

pub const JSON_SCHEMA: &str = "reflect/1";

/// A rectangular table with a header row.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "ragged table row");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.render_plain(),
            Format::Tex => self.render_tex(),
            Format::Json => {
                let v = json!({
                    "schema": JSON_SCHEMA,
                    "headers": self.headers,
                    "rows": self.rows,
                });
                canonical_json(&v)
            }
        }
    }

    fn render_plain(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let fmt_row = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        out.push_str(&fmt_row(&self.headers));
        out.push('\n');
        out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_row(row));
            out.push('\n');
        }
        out
    }

    fn render_tex(&self) -> String {
        let cols = "l".repeat(self.headers.len());
        let mut out = format!("\\begin{{tabular}}{{{cols}}}\n");
        out.push_str(&self.headers.join(" & "));
        out.push_str(" \\\\\n\\hline\n");
        for row in &self.rows {
            out.push_str(&row.join(" & "));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

/// Deterministic JSON: serde_json's default map is ordered (BTree), so a
/// parse/re-render round trip is byte-identical.
pub fn canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
