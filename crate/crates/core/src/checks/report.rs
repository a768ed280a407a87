//! Structured check reports.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A precondition did not hold; nothing was asserted.
    Skipped,
    /// The sample is not generic enough for the claim; reported, not failed.
    NonGeneric,
}

/// One verified claim: inputs, expected and computed values, outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    pub status: Status,
    pub notes: Vec<String>,
    /// Wall-clock time; left out of serialized reports so reruns are
    /// byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn new(check: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            inputs: BTreeMap::new(),
            expected: BTreeMap::new(),
            computed: BTreeMap::new(),
            status: Status::Pass,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> CheckReport {
        self.inputs.insert(key.to_string(), to_value(v));
        self
    }

    pub fn set_input(&mut self, key: &str, v: impl Serialize) {
        self.inputs.insert(key.to_string(), to_value(v));
    }

    /// Records an exact comparison; a mismatch fails the report.
    pub fn expect_eq<T: Serialize + PartialEq>(&mut self, key: &str, expected: T, computed: T) -> bool {
        let ok = expected == computed;
        self.expected.insert(key.to_string(), to_value(&expected));
        self.computed.insert(key.to_string(), to_value(&computed));
        if !ok {
            self.fail(format!(
                "{key}: expected {}, computed {}",
                to_value(&expected),
                to_value(&computed)
            ));
        }
        ok
    }

    /// A computed value with no expectation attached.
    pub fn record(&mut self, key: &str, computed: impl Serialize) {
        self.computed.insert(key.to_string(), to_value(computed));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.status = Status::Fail;
        self.notes.push(why.into());
    }

    pub fn skip(&mut self, why: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Skipped;
        }
        self.notes.push(why.into());
    }

    pub fn non_generic(&mut self, why: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::NonGeneric;
        }
        self.notes.push(why.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Only genuine failures count against a run.
    pub fn is_hard_failure(&self) -> bool {
        self.status == Status::Fail
    }

    /// One JSON object with sorted keys, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&to_value(self)).expect("reports serialize")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// CSV with one row per report: `check,status,inputs`.
pub fn summary_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("check,status,inputs\n");
    for r in reports {
        let status = serde_json::to_value(r.status).expect("status serializes");
        let inputs = serde_json::to_string(&r.inputs)
            .expect("inputs serialize")
            .replace('"', "\"\"");
        out.push_str(&format!(
            "{},{},\"{}\"\n",
            r.check,
            status.as_str().unwrap_or(""),
            inputs
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_keys_and_no_timing() {
        let mut r = CheckReport::new("demo").input("seed", 3).input("r", 2);
        r.elapsed = Duration::from_millis(5);
        assert!(r.expect_eq("h1", 2, 2));
        let line = r.to_json_line();
        assert!(!line.contains("elapsed"));
        let check = line.find("\"check\"").unwrap();
        let status = line.find("\"status\"").unwrap();
        assert!(check < status);
        assert!(line.contains("\"status\":\"pass\""));
    }

    #[test]
    fn mismatch_fails() {
        let mut r = CheckReport::new("demo");
        assert!(!r.expect_eq("h1", 13, 12));
        assert!(r.is_hard_failure());
        r.non_generic("late");
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn csv_quotes_inputs() {
        let r = CheckReport::new("demo").input("grid", "2:1");
        let csv = summary_csv(&[r]);
        assert_eq!(csv, "check,status,inputs\ndemo,pass,\"{\"\"grid\"\":\"\"2:1\"\"}\"\n");
    }
}
