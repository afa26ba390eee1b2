//! Plain-text reports: `#`-prefixed human-readable lines followed by flat
//! `key = value` lines.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

use super::format::format_float;
use crate::numeric::TolerancePolicy;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportDocument {
    notes: Vec<String>,
    values: Vec<(String, String)>,
}

impl ReportDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.values.push((key.to_string(), value.to_string()));
        self
    }

    pub fn put_float(&mut self, key: &str, value: f64) -> &mut Self {
        self.put(key, format_float(value))
    }

    pub fn put_tolerance(&mut self, tol: &TolerancePolicy) -> &mut Self {
        self.put_float("tol.rank_rtol", tol.rank_rtol)
            .put_float("tol.psd_rtol", tol.psd_rtol)
            .put_float("tol.zero_atol", tol.zero_atol)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.notes {
            writeln!(f, "# {line}")?;
        }
        for (k, v) in &self.values {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

/// The `key = value` lines of a rendered report.
pub fn parse_report_values(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
