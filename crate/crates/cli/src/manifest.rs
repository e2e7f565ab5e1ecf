use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Cli;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputDigest {
    /// File name, or `-` for stdout.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

impl OutputDigest {
    pub fn of(path: String, data: &[u8]) -> Self {
        Self {
            path,
            bytes: data.len() as u64,
            sha256: hex::encode(Sha256::digest(data)),
        }
    }
}

/// Everything needed to reproduce a run's data files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: Cli,
    pub version: String,
    pub wall_time_secs: f64,
    pub exit_code: i32,
    pub violations: Vec<String>,
    pub outputs: Vec<OutputDigest>,
}
