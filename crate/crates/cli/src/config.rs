//! The run configuration document.

use std::path::Path;

use aqaw_core::{CfConfig, QBase, QParameters, ToleranceConfig, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// A parameter given either as a real number or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ParamsDoc {
    q: Scalar,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    epsilon: Scalar,
}

impl Default for ParamsDoc {
    fn default() -> Self {
        ParamsDoc {
            q: Scalar::Real(0.5),
            alpha: Scalar::Real(0.4),
            beta: Scalar::Real(0.4),
            gamma: Scalar::Real(0.4),
            delta: Scalar::Real(0.4),
            epsilon: Scalar::Real(0.5),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ToleranceDoc {
    rel_tol: f64,
    max_terms: usize,
    tail_window: usize,
}

impl Default for ToleranceDoc {
    fn default() -> Self {
        let t = ToleranceConfig::default();
        ToleranceDoc { rel_tol: t.rel_tol, max_terms: t.max_terms, tail_window: t.tail_window }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct CfDoc {
    tiny_guard: f64,
    rel_tol: f64,
    max_depth: usize,
}

impl Default for CfDoc {
    fn default() -> Self {
        let c = CfConfig::default();
        CfDoc { tiny_guard: c.tiny_guard, rel_tol: c.rel_tol, max_depth: c.max_depth }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunConfigDoc {
    params: ParamsDoc,
    tolerance: ToleranceDoc,
    cf: CfDoc,
    output_format: OutputFormat,
    seed: Option<u64>,
}

/// Validated configuration shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: QParameters,
    pub tolerance: ToleranceConfig,
    pub cf: CfConfig,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_doc(RunConfigDoc::default()).expect("default configuration is valid")
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: RunConfigDoc = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn from_doc(doc: RunConfigDoc) -> Result<Self, CliError> {
        let p = doc.params;
        let q = QBase::new(p.q.value())?;
        let params =
            QParameters::new(q, p.alpha.value(), p.beta.value(), p.gamma.value(), p.delta.value(), p.epsilon.value())?;
        let t = doc.tolerance;
        let tolerance = ToleranceConfig { rel_tol: t.rel_tol, max_terms: t.max_terms, tail_window: t.tail_window };
        tolerance.validate()?;
        let c = doc.cf;
        let cf = CfConfig { tiny_guard: c.tiny_guard, rel_tol: c.rel_tol, max_depth: c.max_depth };
        cf.validate()?;
        Ok(RunConfig {
            params,
            tolerance,
            cf,
            output_format: doc.output_format,
            seed: doc.seed.unwrap_or(DEFAULT_SEED),
        })
    }
}
