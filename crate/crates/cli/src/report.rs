use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What every subcommand writes.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    /// sha256 of `blob <len>\0<parameters>`, with the command line folded in
    pub input_hash: String,
    pub passed: bool,
    pub results: Value,
    pub elapsed_seconds: f64,
}

pub fn input_hash(command: &str, parameters: &Value) -> String {
    let body = format!("{command}\n{parameters}");
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", body.len()).as_bytes());
    h.update(body.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of one subcommand before it is wrapped in a [`RunReport`].
pub struct Outcome {
    pub passed: bool,
    pub results: Value,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(passed: bool, results: Value) -> Self {
        Outcome { passed, results, csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}
