//! Report documents and their md/json/csv renderings.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Md,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "md" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected md, json or csv)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    BudgetExceeded,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::BudgetExceeded => 2,
            Status::VerificationFailed => 3,
        }
    }

    /// The worse of two statuses; verification failures dominate.
    pub fn max(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (VerificationFailed, _) | (_, VerificationFailed) => VerificationFailed,
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            _ => Ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub label: String,
    pub millis: f64,
}

/// Rows shown in md and csv output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
    #[serde(skip)]
    pub title: String,
    #[serde(skip)]
    pub table: Table,
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, title: String, inputs: Value) -> Self {
        ReportDocument {
            tool: "pvk",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            results: Value::Null,
            status: Status::Ok,
            timings: None,
            title,
            table: Table::default(),
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialization");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.headers).expect("in-memory csv");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
            }
            Format::Md => self.to_string(),
        }
    }
}

impl fmt::Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}\n", self.title)?;
        if !self.table.headers.is_empty() {
            writeln!(f, "| {} |", self.table.headers.join(" | "))?;
            writeln!(f, "|{}", "---|".repeat(self.table.headers.len()))?;
            for row in &self.table.rows {
                writeln!(f, "| {} |", row.join(" | "))?;
            }
            writeln!(f)?;
        }
        for note in &self.notes {
            writeln!(f, "{note}")?;
        }
        if let Some(timings) = &self.timings {
            writeln!(f, "\n## Timings\n")?;
            for t in timings {
                writeln!(f, "- {}: {:.2} ms", t.label, t.millis)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> ReportDocument {
        let mut d = ReportDocument::new("demo", "Demo".into(), serde_json::json!({"n": 1}));
        d.table = Table::new(&["n", "group"]);
        d.table.push(vec!["1".into(), "Z^2".into()]);
        d.table.push(vec!["2".into(), "a, b".into()]);
        d
    }

    #[test]
    fn csv_quotes_when_needed() {
        assert_eq!(doc().render(Format::Csv), "n,group\n1,Z^2\n2,\"a, b\"\n");
    }

    #[test]
    fn json_omits_timings_by_default() {
        let s = doc().render(Format::Json);
        assert!(!s.contains("timings"));
        assert!(s.starts_with("{\n  \"tool\": \"pvk\""));
    }

    #[test]
    fn markdown_table() {
        let s = doc().render(Format::Md);
        assert!(s.contains("| n | group |\n|---|---|\n| 1 | Z^2 |"));
    }

    #[test]
    fn status_order() {
        assert_eq!(
            Status::Ok.max(Status::BudgetExceeded),
            Status::BudgetExceeded
        );
        assert_eq!(
            Status::VerificationFailed.max(Status::BudgetExceeded),
            Status::VerificationFailed
        );
        assert_eq!(Status::VerificationFailed.exit_code(), 3);
    }
}
