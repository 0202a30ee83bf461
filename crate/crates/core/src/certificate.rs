//! Certificates: a verdict on one claim for one input, with enough evidence
//! to re-derive it.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::coloring::Coloring;
use crate::complex::Complex;

pub const VERSION: &str = concat!("bcl-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The claim's hypotheses do not hold for this input.
    Inapplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub evidence: Value,
    pub version: String,
}

impl Certificate {
    pub fn new(claim: &str, inputs_digest: String, verdict: Verdict, evidence: Value) -> Self {
        Certificate { claim: claim.to_string(), inputs_digest, verdict, evidence, version: VERSION.into() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Pretty JSON. Object keys are emitted in sorted order, so equal
    /// certificates have equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// SHA-256 over a sequence of tagged inputs.
#[derive(Clone, Default)]
pub struct InputsDigest(Sha256);

impl InputsDigest {
    pub fn new(claim: &str) -> Self {
        let mut d = InputsDigest(Sha256::new());
        d.text("claim", claim);
        d
    }

    pub fn text(&mut self, tag: &str, value: &str) -> &mut Self {
        self.0.update(tag.as_bytes());
        self.0.update((value.len() as u64).to_le_bytes());
        self.0.update(value.as_bytes());
        self
    }

    pub fn number(&mut self, tag: &str, value: i64) -> &mut Self {
        self.text(tag, &value.to_string())
    }

    pub fn complex(&mut self, c: &Complex) -> &mut Self {
        self.text("complex", &crate::io::write_complex(c, None))
    }

    pub fn coloring(&mut self, k: &Coloring) -> &mut Self {
        let s: Vec<String> = k.colors().iter().map(|c| c.to_string()).collect();
        self.text("coloring", &s.join(" "))
    }

    pub fn finish(&self) -> String {
        hex::encode(self.0.clone().finalize())
    }
}

/// The certificate schema, as published in `schema/certificate.schema.json`.
pub const CERTIFICATE_SCHEMA: &str = include_str!("../schema/certificate.schema.json");

/// Structural validation against [`CERTIFICATE_SCHEMA`]: required keys,
/// their JSON types, the verdict enumeration, and no extra keys.
pub fn validate_certificate_json(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("certificate is not an object")?;
    for key in obj.keys() {
        if !["claim", "inputs_digest", "verdict", "evidence", "version"].contains(&key.as_str()) {
            return Err(format!("unexpected key {key}"));
        }
    }
    let string = |k: &str| obj.get(k).and_then(Value::as_str).ok_or(format!("{k} must be a string"));
    string("claim")?;
    let digest = string("inputs_digest")?;
    if digest.len() != 64 || !digest.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err("inputs_digest must be 64 hex digits".into());
    }
    let verdict = string("verdict")?;
    if !["pass", "fail", "inapplicable"].contains(&verdict) {
        return Err(format!("bad verdict {verdict}"));
    }
    string("version")?;
    if !obj.get("evidence").is_some_and(Value::is_object) {
        return Err("evidence must be an object".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn certificate_json_is_stable_and_valid() {
        let digest = InputsDigest::new("demo").number("d", 3).finish();
        let c = Certificate::new("demo", digest.clone(), Verdict::Pass, json!({"b": 2, "a": 1}));
        let a = c.to_json();
        let b = Certificate::new("demo", digest, Verdict::Pass, json!({"a": 1, "b": 2})).to_json();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        validate_certificate_json(&v).unwrap();
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn schema_rejects_bad_verdict() {
        let v = json!({"claim": "x", "inputs_digest": "0".repeat(64), "verdict": "maybe",
                       "evidence": {}, "version": "v"});
        assert!(validate_certificate_json(&v).is_err());
    }

    #[test]
    fn published_schema_parses() {
        let s: Value = serde_json::from_str(CERTIFICATE_SCHEMA).unwrap();
        assert_eq!(s["required"].as_array().unwrap().len(), 5);
    }
}
