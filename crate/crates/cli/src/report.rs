//! JSON rendering of exact values.

use serde_json::{json, Value};

use delpezzo::cone::PolarizationProfile;
use delpezzo::rational::{format_decimal, format_rational, Q};

pub struct Report {
    decimal: Option<usize>,
}

impl Report {
    pub fn new(decimal: Option<usize>) -> Self {
        Report { decimal }
    }

    pub fn exact(&self, q: &Q) -> String {
        format_rational(q)
    }

    pub fn command(&self, name: &str, inputs: Value) -> Value {
        json!({ "command": name, "inputs": inputs })
    }

    /// Set `key` to `q` and, under `--decimal`, `key_decimal` too.
    pub fn rational(&self, target: &mut Value, key: &str, q: &Q) {
        target[key] = json!(format_rational(q));
        if let Some(k) = self.decimal {
            target[format!("{key}_decimal")] = json!(format_decimal(q, k));
        }
    }

    pub fn rationals(&self, target: &mut Value, key: &str, qs: &[Q]) {
        target[key] = json!(qs.iter().map(format_rational).collect::<Vec<_>>());
        if let Some(k) = self.decimal {
            target[format!("{key}_decimal")] = json!(qs.iter().map(|q| format_decimal(q, k)).collect::<Vec<_>>());
        }
    }

    pub fn profile(&self, target: &mut Value, p: &PolarizationProfile) {
        target["type"] = json!(p.type_tag.name());
        self.rational(target, "mu", &p.mu);
        self.rationals(target, "a", &p.a);
        self.rational(target, "delta", &p.delta);
        self.rational(target, "s_a", &p.s_a);
        target["curves"] = json!(p.curves.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        target["conic"] = json!(p.conic.as_ref().map(|c| c.to_string()));
        target["face_generators"] = json!(p.face_generators.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
}
