//! Structured outcomes of verification runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// Process exit code for this outcome.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub digest: String,
    pub status: Status,
    pub values: BTreeMap<String, Value>,
    pub bound: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    let full = hex::encode(Sha256::digest(text.as_bytes()));
    full[..16].to_string()
}

/// Accumulates the measured values and checks of one instance.
#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    digest: String,
    values: BTreeMap<String, Value>,
    bound: BTreeMap<String, Value>,
    failures: Vec<String>,
    inconclusive: Vec<String>,
}

impl InstanceBuilder {
    /// `description` is a canonical rendering of the input; it is hashed into
    /// the instance digest.
    pub fn new(description: &str) -> Self {
        InstanceBuilder {
            digest: digest(description),
            values: BTreeMap::new(),
            bound: BTreeMap::new(),
            failures: Vec::new(),
            inconclusive: Vec::new(),
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn bound(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.bound.insert(key.to_string(), v.into());
        self
    }

    /// Records a named check. A false check turns the instance into a
    /// failure carrying `witness()` as evidence.
    pub fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.values.insert(format!("check: {name}"), Value::Bool(ok));
        if !ok {
            self.failures.push(format!("{name}: {}", witness()));
        }
        ok
    }

    pub fn inconclusive(&mut self, reason: impl Into<String>) -> &mut Self {
        self.inconclusive.push(reason.into());
        self
    }

    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn finish(self) -> Instance {
        let (status, witness) = if !self.failures.is_empty() {
            (Status::Fail, Some(self.failures.join("; ")))
        } else if !self.inconclusive.is_empty() {
            (Status::Inconclusive, Some(self.inconclusive.join("; ")))
        } else {
            (Status::Pass, None)
        };
        Instance {
            digest: self.digest,
            status,
            values: self.values,
            bound: self.bound,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub field: String,
    pub seed: Option<u64>,
    pub instances: Vec<Instance>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn new(check: &str, field: &str, seed: Option<u64>) -> Self {
        VerificationReport {
            check: check.to_string(),
            status: Status::Pass,
            field: field.to_string(),
            seed,
            instances: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, instance: Instance) {
        self.status = self.status.combine(instance.status);
        self.instances.push(instance);
        self.instances.sort_by(|a, b| a.digest.cmp(&b.digest));
    }

    pub fn timing(&mut self, key: &str, ms: u64) {
        self.timings_ms.insert(key.to_string(), ms);
    }

    /// Appends the instances of another report of the same check.
    pub fn absorb(&mut self, other: VerificationReport) {
        for inst in other.instances {
            self.push(inst);
        }
        for (k, v) in other.timings_ms {
            *self.timings_ms.entry(k).or_insert(0) += v;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON without wall-clock timings; identical across runs with the same
    /// seed and inputs.
    pub fn to_canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms.clear();
        serde_json::to_string(&copy).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{}: {} ({} instance(s), field {}, seed {})",
            self.check,
            self.status,
            self.instances.len(),
            self.field,
            seed
        );
        for inst in &self.instances {
            let _ = writeln!(out, "  [{}] {}", inst.digest, inst.status);
            for (k, v) in &inst.values {
                if !k.starts_with("check: ") {
                    let _ = writeln!(out, "    {k} = {}", render(v));
                }
            }
            for (k, v) in &inst.bound {
                let _ = writeln!(out, "    bound {k} = {}", render(v));
            }
            for (k, v) in &inst.values {
                if let Some(name) = k.strip_prefix("check: ") {
                    let mark = if v == &Value::Bool(true) { "ok" } else { "FAILED" };
                    let _ = writeln!(out, "    [{mark}] {name}");
                }
            }
            if let Some(w) = &inst.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_dominates() {
        let mut b = InstanceBuilder::new("x");
        b.check("a <= b", true, || unreachable!());
        b.inconclusive("cutoff");
        b.check("b <= c", false, || "b=3, c=2".into());
        let inst = b.finish();
        assert_eq!(inst.status, Status::Fail);
        assert!(inst.witness.unwrap().contains("b=3, c=2"));
    }

    #[test]
    fn report_status_aggregates_instances() {
        let mut r = VerificationReport::new("demo", "GF(32003)", Some(1));
        let mut ok = InstanceBuilder::new("one");
        ok.check("t", true, String::new);
        r.push(ok.finish());
        assert_eq!(r.status, Status::Pass);
        let mut pending = InstanceBuilder::new("two");
        pending.inconclusive("cutoff");
        r.push(pending.finish());
        assert_eq!(r.status, Status::Inconclusive);
        let mut bad = InstanceBuilder::new("three");
        bad.check("t", false, || "w".into());
        r.push(bad.finish());
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.status.exit_code(), 1);
        let digests: Vec<_> = r.instances.iter().map(|i| i.digest.clone()).collect();
        let mut sorted = digests.clone();
        sorted.sort();
        assert_eq!(digests, sorted);
    }

    #[test]
    fn canonical_json_ignores_timings() {
        let mut a = VerificationReport::new("demo", "QQ", None);
        let mut b = a.clone();
        a.timing("total", 5);
        b.timing("total", 9);
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert_ne!(a.to_json(), b.to_json());
        let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
