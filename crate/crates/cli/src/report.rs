use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Everything a command reports. The JSON and text renderings list the same
/// fields in the same order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    /// Input path to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub values: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            format_version: linkage_core::FORMAT_VERSION,
            command,
            seed: None,
            inputs: BTreeMap::new(),
            assertions: Vec::new(),
            values: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
    }

    pub fn value(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self.values.insert(key.into(), v);
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format_version: {}", self.format_version);
        let _ = writeln!(s, "command: {}", self.command.join(" "));
        match self.seed {
            Some(seed) => {
                let _ = writeln!(s, "seed: {seed}");
            }
            None => {
                let _ = writeln!(s, "seed: none");
            }
        }
        for (path, digest) in &self.inputs {
            let _ = writeln!(s, "input: {path} sha256:{digest}");
        }
        for a in &self.assertions {
            let _ = writeln!(s, "{} {}: {}", if a.pass { "PASS" } else { "FAIL" }, a.name, a.detail);
        }
        for (k, v) in &self.values {
            match v {
                Value::String(text) if text.contains('\n') => {
                    let _ = writeln!(s, "{k}:");
                    for line in text.lines() {
                        let _ = writeln!(s, "  {line}");
                    }
                }
                Value::String(text) => {
                    let _ = writeln!(s, "{k}: {text}");
                }
                other => {
                    let _ = writeln!(s, "{k}: {other}");
                }
            }
        }
        let _ = writeln!(s, "elapsed_ms: {}", self.elapsed_ms);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_share_fields() {
        let mut r = Report::new(vec!["k6".into(), "xi-check".into()]);
        r.check("closes", true, "ok");
        r.value("steps", 6);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        let text = r.to_text();
        for key in json.as_object().unwrap().keys() {
            assert!(text.contains(key.as_str()) || key == "inputs" || key == "assertions" || key == "values", "{key}");
        }
        assert!(text.contains("PASS closes: ok"));
        assert!(text.contains("steps: 6"));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
