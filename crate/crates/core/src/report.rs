//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::graph::Graph;
use crate::io::to_graph6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    /// SHA-256 of the graph6 encoding.
    pub sha256: String,
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Self {
        let digest = Sha256::digest(to_graph6(g).as_bytes());
        Fingerprint {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            sha256: hex::encode(digest),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Negative,
    UsageError,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::UsageError => 2,
            Status::InternalError => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Fingerprint>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            input: None,
            status: Status::Ok,
            exit_code: 0,
            result: Map::new(),
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn finish(&mut self, status: Status, error: Option<String>) {
        self.status = status;
        self.exit_code = status.exit_code();
        self.error = error;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One `key: value` line per field; strings print bare.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, k: &str, v: &Value| {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        };
        line(&mut out, "command", &Value::String(self.command.join(" ")));
        if let Some(fp) = &self.input {
            out.push_str(&format!("input: {} vertices, {} edges, sha256 {}\n", fp.vertices, fp.edges, fp.sha256));
        }
        for (k, v) in &self.result {
            line(&mut out, k, v);
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(&format!("status: {}\n", serde_json::to_value(self.status).unwrap().as_str().unwrap()));
        out
    }
}
