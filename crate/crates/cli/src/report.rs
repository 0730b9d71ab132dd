//! Deterministic command reports, rendered as `key: value` text or JSON.

use qflow_core::linalg::Subspace;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The input was fine but the computation says no (exit 1).
    Failed,
    /// The command could not run (exit 1 or 2, from the error).
    Error(i32),
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error(code) => code,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input_sha256: Option<String>,
    pub payload: Map<String, Value>,
    pub status: Status,
    pub message: Option<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// `{dim, basis}` with the basis in RREF.
pub fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().to_rows() })
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command.clone()));
        if let Some(d) = &self.input_sha256 {
            top.insert("input_sha256".into(), Value::from(d.clone()));
        }
        top.insert("result".into(), Value::Object(self.payload.clone()));
        top.insert("status".into(), Value::from(self.status.label()));
        top.insert("exit_code".into(), Value::from(self.status.exit_code()));
        if let Some(m) = &self.message {
            top.insert("message".into(), Value::from(m.clone()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("values are serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(d) = &self.input_sha256 {
            out += &format!("input_sha256: {d}\n");
        }
        for (k, v) in &self.payload {
            flatten(k, v, &mut out);
        }
        if let Some(m) = &self.message {
            out += &format!("message: {m}\n");
        }
        out += &format!("status: {} (exit {})\n", self.status.label(), self.status.exit_code());
        out
    }
}

/// Nested objects become dotted keys; arrays stay compact JSON.
fn flatten(key: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, inner) in m {
                flatten(&format!("{key}.{k}"), inner, out);
            }
        }
        Value::String(s) => *out += &format!("{key}: {s}\n"),
        other => *out += &format!("{key}: {other}\n"),
    }
}
