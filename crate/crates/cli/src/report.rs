use std::time::Duration;

use drinfeld::drinfeld::DrinfeldError;
use drinfeld::gf::OpCounts;
use drinfeld::io::IoError;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::NotAMorphism(_) => 3,
            CliError::TooLarge(_) => 4,
            CliError::Mismatch(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<DrinfeldError> for CliError {
    fn from(e: DrinfeldError) -> Self {
        match e {
            DrinfeldError::NotAMorphism => CliError::NotAMorphism(e.to_string()),
            DrinfeldError::ZeroRank
            | DrinfeldError::GammaMismatch
            | DrinfeldError::ZeroInput
            | DrinfeldError::Field(_) => CliError::Parse(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Drinfeld(d) => d.into(),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

/// The single JSON object a command writes to stdout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the inputs, hex.
    pub input_digest: String,
    pub result: Value,
    pub counters: OpCounts,
    pub wall_ns: u64,
}

impl RunReport {
    pub fn new(command: &str, digest: String, result: Value, counters: OpCounts, wall: Duration) -> Self {
        RunReport {
            command: command.to_string(),
            input_digest: digest,
            result,
            counters,
            wall_ns: wall.as_nanos() as u64,
        }
    }

    pub fn emit(&self, summary: &str) {
        println!("{}", serde_json::to_string(self).expect("reports serialize"));
        eprintln!("{summary}");
    }
}

/// Length-prefixed so that `["ab", "c"]` and `["a", "bc"]` differ.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("{:x}", h.finalize())
}
