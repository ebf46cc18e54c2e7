//! Report documents and their JSON, text and CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use symbern_core::CycloElement;

pub const TOOL: &str = "symbern";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[default]
    Text,
    Csv,
}

/// An exact value: cyclotomic coordinates always, plus a single fraction
/// when the value is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Value {
    pub cyclotomic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

impl Value {
    pub fn new(v: &CycloElement) -> Value {
        Value { cyclotomic: v.to_string(), rational: v.as_rational().map(|r| r.to_string()) }
    }

    /// The fraction when rational, the coordinates otherwise.
    pub fn short(&self) -> &str {
        self.rational.as_deref().unwrap_or(&self.cyclotomic)
    }
}

/// Rows for the text and CSV renderings.
pub trait Tabular {
    fn headers() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

#[derive(Debug, Serialize)]
pub struct ReportDocument<C, R, S> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: C,
    pub records: Vec<R>,
    pub summary: S,
}

impl<C: Serialize, R: Serialize + Tabular, S: Serialize> ReportDocument<C, R, S> {
    pub fn new(command: &'static str, config: C, records: Vec<R>, summary: S) -> Self {
        ReportDocument { tool: TOOL, version: VERSION, command, config, records, summary }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(R::headers()).expect("in-memory write");
        for r in &self.records {
            w.write_record(r.row()).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    fn text(&self) -> String {
        let headers = R::headers();
        let rows: Vec<Vec<String>> = self.records.iter().map(Tabular::row).collect();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        let _ = writeln!(out, "{TOOL} {VERSION} {}", self.command);
        line(&mut out, headers.clone());
        for row in &rows {
            line(&mut out, row.iter().map(String::as_str).collect());
        }
        let summary = serde_json::to_value(&self.summary).expect("summary serializes");
        if let serde_json::Value::Object(map) = summary {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "summary: {}", parts.join(" "));
        }
        out
    }
}
