use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const REPORT_VERSION: &str = "1";

/// Acceptance region of a check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Bound {
    Scalar(f64),
    Interval([f64; 2]),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Scalar(b) => write!(f, "{}", fmt_float(*b)),
            Bound::Interval([lo, hi]) => write!(f, "[{};{}]", fmt_float(*lo), fmt_float(*hi)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "in")]
    Within,
    #[serde(rename = "==")]
    Equals,
}

impl Comparison {
    fn as_str(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
            Comparison::Within => "in",
            Comparison::Equals => "==",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub paper_anchor: String,
    pub value: f64,
    pub bound: Bound,
    pub comparison: Comparison,
    pub pass: bool,
    /// Informational records are reported but never fail the run.
    pub informational: bool,
    pub note: String,
}

impl CheckRecord {
    pub fn new(check_id: &str, anchor: &str, value: f64, bound: Bound, comparison: Comparison) -> Self {
        let pass = match (comparison, bound) {
            (Comparison::AtMost, Bound::Scalar(b)) => value <= b,
            (Comparison::AtLeast, Bound::Scalar(b)) => value >= b,
            (Comparison::Equals, Bound::Scalar(b)) => value == b,
            (Comparison::Within, Bound::Interval([lo, hi])) => lo <= value && value <= hi,
            _ => false,
        };
        Self {
            check_id: check_id.to_string(),
            paper_anchor: anchor.to_string(),
            value,
            bound,
            comparison,
            pass,
            informational: false,
            note: String::new(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Whether the record counts as a failure of the run.
    pub fn fails(&self) -> bool {
        !self.pass && !self.informational
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<C: Serialize> {
    pub version: &'static str,
    pub config_echo: C,
    pub records: Vec<CheckRecord>,
}

impl<C: Serialize> Report<C> {
    /// Records are sorted by `check_id` so output order never depends on
    /// evaluation order.
    pub fn new(config_echo: C, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Self {
            version: REPORT_VERSION,
            config_echo,
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        !self.records.iter().any(CheckRecord::fails)
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn to_csv(&self) -> Result<String> {
        let header = ["check_id", "paper_anchor", "value", "bound", "comparison", "pass", "informational", "note"];
        let rows = self.records.iter().map(|r| {
            vec![
                r.check_id.clone(),
                r.paper_anchor.clone(),
                fmt_float(r.value),
                r.bound.to_string(),
                r.comparison.as_str().to_string(),
                r.pass.to_string(),
                r.informational.to_string(),
                r.note.clone(),
            ]
        });
        to_csv(&header, rows)
    }
}

/// Shortest representation that round-trips; identical across runs.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<I>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_logic() {
        assert!(CheckRecord::new("a", "x", 1.0, Bound::Scalar(2.0), Comparison::AtMost).pass);
        assert!(!CheckRecord::new("a", "x", f64::NAN, Bound::Scalar(2.0), Comparison::AtMost).pass);
        assert!(CheckRecord::new("a", "x", 1.5, Bound::Interval([1.0, 2.0]), Comparison::Within).pass);
        let info = CheckRecord::new("a", "x", 3.0, Bound::Scalar(2.0), Comparison::AtMost).informational();
        assert!(!info.pass && !info.fails());
    }

    #[test]
    fn sorted_and_lf() {
        let recs = vec![
            CheckRecord::new("b", "x", 0.1, Bound::Scalar(1.0), Comparison::AtMost),
            CheckRecord::new("a", "x", 0.2, Bound::Interval([0.0, 1.0]), Comparison::Within),
        ];
        let r = Report::new("cfg", recs);
        assert_eq!(r.records[0].check_id, "a");
        let csv = r.to_csv().unwrap();
        assert!(!csv.contains('\r'));
        assert!(csv.starts_with("check_id,paper_anchor"));
        assert!(r.to_json().unwrap().contains("\"bound\": [\n"));
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02e23] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
