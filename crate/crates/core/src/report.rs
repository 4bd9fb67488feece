//! Machine-readable run reports.
//!
//! Every map is a `BTreeMap`, so serialization order is fixed and the same
//! inputs always produce byte-identical JSON.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rationals travel as `"p/q"` strings so no precision is lost.
pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_rationals<S: Serializer, V: AsRef<[BigRational]>>(qs: &V, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.as_ref().iter().map(|q| q.to_string()))
}

pub fn ser_opt_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

pub fn rational_strings(qs: &[BigRational]) -> Vec<String> {
    qs.iter().map(|q| q.to_string()).collect()
}

/// One named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, Value>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Verdict { name: name.into(), pass, metrics: BTreeMap::new() }
    }

    pub fn metric(mut self, key: &str, value: impl Serialize) -> Self {
        self.metrics.insert(key.to_string(), to_value(value));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            version: VERSION.to_string(),
            seed: None,
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            artifacts: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn artifact(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.artifacts.insert(key.to_string(), to_value(value));
        self
    }

    pub fn verdict(&mut self, v: Verdict) -> &mut Self {
        self.verdicts.push(v);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only serializable data")
    }
}

fn to_value(v: impl Serialize) -> Value {
    // non-finite floats have no JSON form; serde_json turns them into null
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Plain CSV with a header row. Floats use Rust's shortest round-trip form,
/// which always has `.` as the decimal separator.
pub fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
