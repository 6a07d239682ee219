use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The result of one command. Maps are sorted, so the JSON form is
/// byte-stable apart from `timing_seconds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub tables: BTreeMap<String, Value>,
    pub lines: Vec<String>,
    pub timing_seconds: f64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            parameters: BTreeMap::new(),
            passed: true,
            verdicts: Vec::new(),
            tables: BTreeMap::new(),
            lines: Vec::new(),
            timing_seconds: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, v: Value) {
        self.parameters.insert(key.into(), v);
    }

    pub fn set_table(&mut self, key: &str, v: Value) {
        self.tables.insert(key.into(), v);
    }

    pub fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: String) {
        self.passed &= passed;
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&v).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}: {}\n", v.name, v.detail));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("nf");
        r.param("z", Value::from(1));
        r.param("a", Value::from("x"));
        r.verdict("ok", false, "detail".into());
        r.set_table("t", serde_json::json!({"b": 1, "a": [1, 2]}));
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed);
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
    }
}
