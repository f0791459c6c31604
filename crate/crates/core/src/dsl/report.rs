//! Canonical JSON reports: sorted keys, no floating point, arrays in
//! declaration order, with tool version and input digests for
//! reproducibility.

use serde_json::Value;
use sha2::{Digest, Sha256};

/// Serializes a report deterministically (the JSON maps are ordered, so
/// equal inputs give byte-identical output).
pub fn emit_report(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports are serializable");
    s.push('\n');
    s
}

pub fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The report envelope shared by every subcommand.
pub fn envelope(command: &str, inputs: &[(String, String)], results: Value, verdict: &str) -> Value {
    serde_json::json!({
        "command": command,
        "inputs": inputs
            .iter()
            .map(|(path, digest)| serde_json::json!({"path": path, "sha256": digest}))
            .collect::<Vec<_>>(),
        "results": results,
        "tool": {"name": "pielift", "version": env!("CARGO_PKG_VERSION")},
        "verdict": verdict,
    })
}
