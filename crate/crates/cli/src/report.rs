//! JSON-lines report records and the structural report diff.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// One verdict for one `(group, σ, property)` triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub group: String,
    pub order: usize,
    pub sigma: String,
    pub property: String,
    pub verdict: Option<bool>,
    /// Generators of the canonical offending subgroup, in cycle notation.
    pub witness: Option<Vec<String>>,
    pub details: BTreeMap<String, bool>,
    pub elapsed_ms: u64,
}

impl Record {
    pub fn sort_key(&self) -> (&str, &str, &str) {
        (&self.group, &self.sigma, &self.property)
    }
}

pub fn sort_records(records: &mut [Record]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn to_json_lines(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn read_report(path: &Path) -> Result<Vec<Record>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Report {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CliError::Report {
                path: path.to_path_buf(),
                message: format!("line {}: {e}", i + 1),
            })
        })
        .collect()
}

/// Semantic differences between two reports, ignoring timings and record
/// order. Empty when the reports agree.
pub fn diff(a: &[Record], b: &[Record]) -> Vec<String> {
    type Key = (String, String, String);
    let index = |rs: &[Record]| -> BTreeMap<Key, Record> {
        rs.iter()
            .map(|r| {
                let (g, s, p) = r.sort_key();
                ((g.to_string(), s.to_string(), p.to_string()), r.clone())
            })
            .collect()
    };
    let (ia, ib) = (index(a), index(b));
    let mut out = Vec::new();
    for (key, ra) in &ia {
        let label = format!("{} {} {}", key.0, key.1, key.2);
        match ib.get(key) {
            None => out.push(format!("only in first: {label}")),
            Some(rb) => {
                let mut line = String::new();
                if ra.order != rb.order {
                    write!(line, " order {} -> {}", ra.order, rb.order).unwrap();
                }
                if ra.verdict != rb.verdict {
                    write!(line, " verdict {:?} -> {:?}", ra.verdict, rb.verdict).unwrap();
                }
                if ra.witness != rb.witness {
                    write!(line, " witness {:?} -> {:?}", ra.witness, rb.witness).unwrap();
                }
                if ra.details != rb.details {
                    write!(line, " details {:?} -> {:?}", ra.details, rb.details).unwrap();
                }
                if !line.is_empty() {
                    out.push(format!("changed: {label}:{line}"));
                }
            }
        }
    }
    for key in ib.keys().filter(|k| !ia.contains_key(*k)) {
        out.push(format!("only in second: {} {} {}", key.0, key.1, key.2));
    }
    out
}
