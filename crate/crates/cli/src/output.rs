use clap::ValueEnum;
use covercert::InequalityReport;
use serde_json::{json, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// What a command produced: a JSON document, the same data as rows for the
/// tabular formats, and the verdict that drives the exit code.
pub struct Outcome {
    pub json: Json,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

impl Outcome {
    pub fn new(json: Json, pass: bool) -> Self {
        Outcome {
            json,
            header: Vec::new(),
            rows: Vec::new(),
            pass,
        }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    /// Key/value rows built from the top level of the JSON object.
    pub fn with_fields(self) -> Self {
        let rows = match &self.json {
            Json::Object(m) => m.iter().map(|(k, v)| vec![k.clone(), scalar(v)]).collect(),
            other => vec![vec!["value".into(), scalar(other)]],
        };
        self.with_table(&["field", "value"], rows)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in memory");
                for r in &self.rows {
                    w.write_record(r).expect("in memory");
                }
                String::from_utf8(w.into_inner().expect("in memory")).expect("utf8")
            }
            Format::Table => table(&self.header, &self.rows),
        }
    }
}

fn scalar(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => String::new(),
        other => other.to_string(),
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header);
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

pub const REPORT_HEADER: [&str; 7] = ["name", "cover", "lhs", "rhs", "slack", "pass", "exact"];

pub fn report_row(label: &str, r: &InequalityReport) -> Vec<String> {
    vec![
        r.name.clone(),
        label.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.slack.as_ref().map(|s| s.to_string()).unwrap_or_default(),
        r.pass.to_string(),
        r.exact.to_string(),
    ]
}

pub fn single_report(label: &str, r: &InequalityReport) -> Outcome {
    let json = serde_json::to_value(r).expect("serializes");
    Outcome::new(json, r.pass).with_table(&REPORT_HEADER, vec![report_row(label, r)])
}

pub fn report_list(labelled: &[(String, InequalityReport)]) -> Outcome {
    let pass = labelled.iter().all(|(_, r)| r.pass);
    let json = json!({
        "count": labelled.len(),
        "pass": pass,
        "reports": labelled.iter().map(|(l, r)| json!({"cover": l, "report": r})).collect::<Vec<_>>(),
    });
    let rows = labelled.iter().map(|(l, r)| report_row(l, r)).collect();
    Outcome::new(json, pass).with_table(&REPORT_HEADER, rows)
}
