//! Failure classification and JSON report files.

use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};
use swlab_core::Error;
use swlab_metric::MetricError;

pub const SCHEMA: u32 = 1;

/// Exit code 1 for failed mathematical checks, 2 for bad input or usage.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) => m,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Failure::Verification(_) => "verification-failed",
            Failure::Usage(_) => "input-error",
        }
    }
}

pub fn core_failure(e: Error) -> Failure {
    match e {
        Error::CorpusValidationFailed { .. } => Failure::Verification(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

pub fn metric_failure(e: MetricError) -> Failure {
    match e {
        MetricError::UnknownModel(_) | MetricError::InvalidParameter(_) => Failure::Usage(e.to_string()),
        _ => Failure::Verification(e.to_string()),
    }
}

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool { name: "swlab", version: env!("CARGO_PKG_VERSION") };

#[derive(Serialize)]
pub struct ErrorInfo {
    pub exit_code: u8,
    pub message: String,
}

impl From<&Failure> for ErrorInfo {
    fn from(f: &Failure) -> Self {
        Self { exit_code: f.exit_code(), message: f.message().to_string() }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let write = || -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    };
    write().map_err(|e| Failure::Usage(format!("{e:#}")))
}
