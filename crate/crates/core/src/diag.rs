//! Diagnostics reported by validators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// How bad a diagnostic is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => write!(f, "warning"),
            Severity::Error => write!(f, "error"),
        }
    }
}

/// One finding from a validator, carrying the locus it refers to
/// (an entry id, a label index, a field name — whatever identifies
/// the offending element for a human).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub locus: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(locus: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            locus: locus.into(),
            message: message.into(),
        }
    }

    pub fn warning(locus: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            locus: locus.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.locus, self.message)
    }
}

/// True when no diagnostic in the list is an [`Severity::Error`].
pub fn all_clear(diags: &[Diagnostic]) -> bool {
    diags.iter().all(|d| d.severity != Severity::Error)
}
