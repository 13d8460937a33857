use serde_json::Value;
use thiserror::Error;

/// A failed job: machine-readable code, the offending field path, and the exit status.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{code} at '{path}': {message}")]
pub struct CliError {
    pub code: &'static str,
    pub path: String,
    pub message: String,
    pub exit_status: u8,
}

impl CliError {
    fn validation(code: &'static str, path: &str, message: impl Into<String>) -> Self {
        Self { code, path: path.to_string(), message: message.into(), exit_status: 1 }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::validation("usage", "", message)
    }

    pub fn io(path: &str, message: impl Into<String>) -> Self {
        Self::validation("io", path, message)
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Self::validation("malformed_json", "", message)
    }

    pub fn schema(path: &str, message: &str) -> Self {
        Self::validation("schema", path, message)
    }

    pub fn non_finite(path: &str, message: &str) -> Self {
        Self::validation("non_finite", path, message)
    }

    pub fn dimension(path: &str, message: &str) -> Self {
        Self::validation("dimension", path, message)
    }

    /// Exit status 2: an internal postcondition failed.
    pub fn verification(message: impl Into<String>) -> Self {
        Self { code: "verification", path: String::new(), message: message.into(), exit_status: 2 }
    }

    pub fn from_core(err: tps_core::Error, path: &str) -> Self {
        use tps_core::Error as E;
        let message = err.to_string();
        match err {
            E::DimensionMismatch(_) => Self::validation("dimension", path, message),
            E::NonFinite(_) => Self::validation("non_finite", path, message),
            E::NormMismatch { .. } | E::Unnormalized(_) => Self::validation("norm", path, message),
            E::InvalidInput(_) | E::DependentSeeds { .. } => Self::validation("invalid_input", path, message),
            E::VerificationFailed(_) => Self::verification(message),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "error": { "code": self.code, "path": self.path, "message": self.message }
        })
    }
}
