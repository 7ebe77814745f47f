//! Report records and their JSON/CSV rendering.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::commands::Method;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One method's count: an integer, or why there is none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CountCell {
    Value(i64),
    Missing(&'static str),
}

impl CountCell {
    pub const SKIPPED: CountCell = CountCell::Missing("skipped");
    pub const UNAVAILABLE: CountCell = CountCell::Missing("n/a");

    pub fn value(&self) -> Option<i64> {
        match self {
            CountCell::Value(v) => Some(*v),
            CountCell::Missing(_) => None,
        }
    }

    fn text(&self) -> String {
        match self {
            CountCell::Value(v) => v.to_string(),
            CountCell::Missing(s) => s.to_string(),
        }
    }
}

/// Counts of one Dwork member by every requested method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub q: u32,
    pub degree: u32,
    /// Integer for prime fields, coefficient list (low degree first) otherwise.
    pub lambda: serde_json::Value,
    pub counts: BTreeMap<&'static str, CountCell>,
    pub residuals: BTreeMap<&'static str, f64>,
    pub ms: BTreeMap<&'static str, f64>,
}

impl Report {
    /// Distinct integer counts; more than one means the methods disagree.
    pub fn distinct_counts(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.counts.values().filter_map(CountCell::value).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn lambda_text(&self) -> String {
        match &self.lambda {
            serde_json::Value::Array(c) => c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            other => other.to_string(),
        }
    }
}

/// Result of one identity family under `verify`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn cell<T: ToString>(m: &BTreeMap<&'static str, T>, key: &str) -> String {
    m.get(key).map(ToString::to_string).unwrap_or_default()
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// Column order follows the JSON layout: counts, residuals, then times.
pub fn reports_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["q".to_string(), "degree".into(), "lambda".into()];
    for prefix in ["count", "residual", "ms"] {
        header.extend(Method::ALL.iter().map(|m| format!("{prefix}_{}", m.name())));
    }
    w.write_record(&header).expect("in-memory write");
    for r in reports {
        let mut row = vec![r.q.to_string(), r.degree.to_string(), r.lambda_text()];
        row.extend(Method::ALL.iter().map(|m| r.counts.get(m.name()).map(CountCell::text).unwrap_or_default()));
        row.extend(Method::ALL.iter().map(|m| cell(&r.residuals, m.name())));
        row.extend(Method::ALL.iter().map(|m| cell(&r.ms, m.name())));
        w.write_record(&row).expect("in-memory write");
    }
    csv_text(w)
}

pub fn verify_csv(rows: &[VerifyRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    csv_text(w)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}
