//! Machine-readable reports with a diff-stable JSON encoding: object keys are
//! sorted, floats are printed with 17 significant digits and non-finite
//! floats become `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fuzz::FuzzSummary;
use crate::inequalities::{CheckOutcome, SharpnessOutcome, Verdict};
use crate::radii::RadiusEstimate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// The command line, minus the program name.
    pub command: Vec<String>,
    #[serde(default)]
    pub instance_digest: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub quantities: BTreeMap<String, RadiusEstimate>,
    #[serde(default)]
    pub outcomes: Vec<CheckOutcome>,
    #[serde(default)]
    pub counts: BTreeMap<String, usize>,
    #[serde(default)]
    pub fuzz: Option<FuzzSummary>,
    #[serde(default)]
    pub sharpness: Vec<SharpnessOutcome>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default)]
    pub errors: Vec<String>,
    pub exit_code: i32,
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            instance_digest: None,
            seed: None,
            quantities: BTreeMap::new(),
            outcomes: Vec::new(),
            counts: BTreeMap::new(),
            fuzz: None,
            sharpness: Vec::new(),
            warnings: Vec::new(),
            errors: Vec::new(),
            exit_code: 0,
            wall_time_s: 0.0,
        }
    }

    /// Fills `counts` with the number of outcomes per verdict.
    pub fn count_verdicts(&mut self) {
        self.counts.clear();
        for o in &self.outcomes {
            let key = match o.verdict {
                Verdict::Holds => "holds",
                Verdict::Violated => "violated",
                Verdict::Inapplicable => "inapplicable",
            };
            *self.counts.entry(key.to_string()).or_default() += 1;
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) if !n.is_f64() => write!(out, "{u}").unwrap(),
            (_, Some(i), _) if !n.is_f64() => write!(out, "{i}").unwrap(),
            (_, _, Some(f)) => out.push_str(&format_float(f)),
            _ => out.push_str("null"),
        },
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 2);
                write_value(out, item, indent + 2);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, indent + 2);
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_value(out, &map[*k], indent + 2);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Serde adapter for floats that may be NaN (e.g. slacks of inapplicable
/// entries): non-finite values are written as `null` and read back as NaN.
pub mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}
