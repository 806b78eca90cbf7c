use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use dualskel::CheckRecord;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub certificate: Value,
}

impl From<CheckRecord> for Check {
    fn from(c: CheckRecord) -> Self {
        Check { name: c.name, pass: c.pass, certificate: c.certificate }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report { command: command.into(), inputs, outputs: json!({}), checks: Vec::new(), timing: Timing { elapsed_ms: 0.0 } }
    }

    pub fn check(&mut self, name: &str, pass: bool, certificate: Value) {
        self.checks.push(Check { name: name.into(), pass, certificate });
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(checks.into_iter().map(Check::from));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        if let Value::Object(m) = &self.inputs {
            for (k, v) in m {
                out += &format!("  {k}: {}\n", compact(v));
            }
        }
        out += "outputs:\n";
        match &self.outputs {
            Value::Object(m) => {
                for (k, v) in m {
                    out += &format!("  {k}: {}\n", compact(v));
                }
            }
            v => out += &format!("  {}\n", compact(v)),
        }
        if !self.checks.is_empty() {
            out += "checks:\n";
            for c in &self.checks {
                out += &format!("  {} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
        }
        out += &format!("elapsed: {:.3} ms\n", self.timing.elapsed_ms);
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}
