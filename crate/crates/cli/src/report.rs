use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Result of one command. Serialises deterministically: maps are ordered and
/// nothing time dependent is recorded.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Value,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: BTreeMap<String, String>) -> Self {
        Report { command: command.into(), inputs, outputs: Value::Null, notes: Vec::new(), summary: Vec::new() }
    }

    pub fn output(mut self, v: impl Serialize) -> Self {
        self.outputs = serde_json::to_value(v).expect("report values serialise");
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn summary_text(&self) -> String {
        let mut s = format!("== {}\n", self.command);
        for l in &self.summary {
            s.push_str(l);
            s.push('\n');
        }
        for n in &self.notes {
            s.push_str("note: ");
            s.push_str(n);
            s.push('\n');
        }
        s
    }
}

pub const WITHIN_BOUND: &str = "verified within bound";
pub const DATA_DEPENDENT: &str = "data-dependent";
