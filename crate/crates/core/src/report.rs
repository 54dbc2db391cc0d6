//! Report envelopes and their JSON/CSV encodings.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::exact::sig12;
use crate::Result;

pub const TOOL: &str = "monoball";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    /// A hypothesis was not met; the run is descriptive.
    Hypothesis,
    Falsified,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Hypothesis => 2,
            Outcome::Falsified => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Hypothesis => "hypothesis",
            Outcome::Falsified => "falsified",
        }
    }

    /// The worse of two outcomes.
    pub fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Falsified, _) | (_, Falsified) => Falsified,
            (Hypothesis, _) | (_, Hypothesis) => Hypothesis,
            _ => Pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A finished experiment: command, seed, outcome and the payload.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub command: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub summary: String,
    pub report: Value,
}

impl Envelope {
    pub fn new(command: &str, seed: u64, outcome: Outcome, summary: String, report: &impl Serialize) -> Result<Self> {
        Ok(Self { command: command.into(), seed, outcome, summary, report: serde_json::to_value(report)? })
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("tool".into(), TOOL.into());
        map.insert("version".into(), VERSION.into());
        map.insert("command".into(), self.command.clone().into());
        map.insert("seed".into(), self.seed.into());
        map.insert("outcome".into(), serde_json::to_value(self.outcome).expect("unit enum"));
        map.insert("report".into(), round_floats(self.report.clone()));
        Value::Object(map)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.to_value())?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let report = round_floats(self.report.clone());
        // growth profiles get a plot-ready n,size table
        if let Some(sizes) = report.get("sizes").and_then(Value::as_array) {
            w.write_record(["n", "size"]).map_err(csv_error)?;
            for (i, s) in sizes.iter().enumerate() {
                w.write_record([(i + 1).to_string(), s.to_string()]).map_err(csv_error)?;
            }
        } else {
            w.write_record(["key", "value"]).map_err(csv_error)?;
            let mut rows = Vec::new();
            flatten("", &self.to_value(), &mut rows);
            for (k, v) in rows {
                w.write_record([k, v]).map_err(csv_error)?;
            }
        }
        w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
    }

    pub fn write(&self, path: Option<&Path>, format: Format) -> Result<()> {
        let bytes = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> crate::Error {
    std::io::Error::other(e.to_string()).into()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

/// Rounds every non-integer number to 12 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = sig12(n.as_f64().expect("checked"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, round_floats(x))).collect()),
        other => other,
    }
}
