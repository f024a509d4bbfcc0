//! Machine-readable reports.
//!
//! The JSON form is byte-deterministic for a fixed seed: field order is
//! fixed and wall time is reported only on stderr in human mode.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, verdict: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            verdict: verdict.into(),
            witness: None,
            detail: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Verdict {
        self.witness = Some(w.into());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Verdict {
        self.detail = Some(d.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        matches!(self.verdict.as_str(), "fail" | "not-equal" | "unexpected-pass")
    }

    pub fn is_unknown(&self) -> bool {
        self.verdict == "unknown"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub bounds: BTreeMap<String, u64>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: &[&str], seed: u64) -> Report {
        Report {
            command: command.to_string(),
            inputs_digest: format!("{:016x}", digest(command, inputs)),
            seed,
            bounds: BTreeMap::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn bound(&mut self, name: &str, value: u64) {
        self.bounds.insert(name.to_string(), value);
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// 0 all pass, 1 any fail, 2 any unknown (and no fail).
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(Verdict::is_fail) {
            1
        } else if self.verdicts.iter().any(Verdict::is_unknown) {
            2
        } else {
            0
        }
    }

    pub fn emit(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("serialize"));
            return;
        }
        for v in &self.verdicts {
            let mut line = format!("{}: {}", v.name, v.verdict);
            if let Some(w) = &v.witness {
                line.push_str(&format!(" [{w}]"));
            }
            if let Some(d) = &v.detail {
                line.push_str(&format!(" ({d})"));
            }
            println!("{line}");
        }
        for n in &self.notes {
            println!("note: {n}");
        }
    }
}

/// FNV-1a over the command and raw inputs.
fn digest(command: &str, inputs: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for b in bytes {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(command.as_bytes());
    for s in inputs {
        eat(&[0]);
        eat(s.as_bytes());
    }
    h
}
