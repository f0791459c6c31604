//! Shared diagnostics for structural validation.
//!
//! Validators return the full list of violations rather than failing on the
//! first one, so a single pass reports every law that breaks and which ids
//! are involved.

use serde::Serialize;

/// One failed structural law, with the offending ids in `detail`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Stable machine-readable tag for the law that failed.
    pub rule: String,
    /// Description naming the offending ids.
    pub detail: String,
}

pub type Diagnostics = Vec<Violation>;

pub fn violation(rule: &str, detail: impl Into<String>) -> Violation {
    Violation {
        rule: rule.to_string(),
        detail: detail.into(),
    }
}

/// Renders diagnostics as one line per violation, for error messages.
pub fn render(diags: &Diagnostics) -> String {
    diags
        .iter()
        .map(|v| format!("{}: {}", v.rule, v.detail))
        .collect::<Vec<_>>()
        .join("\n")
}
