//! Campaign runner and report formatting behind the `hdsim` binary.

mod campaign;
mod config;
mod report;
mod table;

pub use campaign::{compare, run_campaign, ComparisonReport};
pub use config::{CampaignConfig, ConfigError, OutputFormat, Protocol};
pub use report::Report;
pub use table::{enumerate_table, TableRow};

use thiserror::Error;

use crate::aloha::AlohaError;
use crate::hyperdense::HyperdenseError;
use crate::superdense::SuperdenseError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Aloha(#[from] AlohaError),
    #[error(transparent)]
    Hyperdense(#[from] HyperdenseError),
    #[error(transparent)]
    Superdense(#[from] SuperdenseError),
    #[error("serialization failed: {0}")]
    Output(String),
}

impl HarnessError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            _ => 1,
        }
    }
}
