use serde_json::{json, Value};

/// Exit codes of the `aqaw` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("continuous spectrum: {0}")]
    ContinuousSpectrum(String),
    #[error(transparent)]
    Core(#[from] aqaw_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ContinuousSpectrum(_) => exit::NON_CONVERGENCE,
            CliError::Core(aqaw_core::Error::NonConvergence { .. } | aqaw_core::Error::Spectrum(_)) => {
                exit::NON_CONVERGENCE
            }
            _ => exit::VALIDATION,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Argument(_) => "argument",
            CliError::ContinuousSpectrum(_) => "spectrum",
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            CliError::ContinuousSpectrum(_) | CliError::Core(aqaw_core::Error::Spectrum(_)) => "continuous spectrum",
            CliError::Core(aqaw_core::Error::NonConvergence { .. }) => "non-convergence",
            CliError::Core(aqaw_core::Error::Pole { .. }) => "vanishing factor",
            CliError::Core(aqaw_core::Error::Guard(_)) => "guard not certified",
            _ => "invalid input",
        }
    }

    /// The machine-readable error object printed on failure.
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "kind": self.kind(),
            "reason": self.reason(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            CliError::Core(aqaw_core::Error::Pole { factor, index }) => {
                obj["factor"] = json!(factor);
                obj["index"] = json!(index);
            }
            CliError::Core(aqaw_core::Error::NonConvergence { terms, .. }) => {
                obj["terms"] = json!(terms);
            }
            _ => {}
        }
        json!({ "error": obj })
    }
}
