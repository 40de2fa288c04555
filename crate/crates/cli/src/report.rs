//! The JSON envelope wrapped around every report.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportEnvelope<R: Serialize> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    /// sha256 of the input file bytes
    pub input_hash: String,
    pub characteristic: u32,
    pub report: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<cmfree_core::gorenstein::CertificateSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl<R: Serialize> ReportEnvelope<R> {
    pub fn new(command: &str, input: &[u8], characteristic: u32, report: R) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            input_hash: hash_input(input),
            characteristic,
            report,
            certificates: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn hash_input(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
