use std::fmt;

use thiserror::Error;

use crate::hyperdense::PairSource;

pub const DEFAULT_SLOTS: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_USERS: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    Aloha,
    Superdense,
    Hyperdense,
    Compare,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Aloha => "aloha",
            Protocol::Superdense => "superdense",
            Protocol::Hyperdense => "hyperdense",
            Protocol::Compare => "compare",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid `{field}`: {message}")]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

/// Everything needed to reproduce one run. `workers` affects wall time only.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub protocol: Protocol,
    pub n_slots: u64,
    pub seed: u64,
    /// Aloha user count.
    pub users: Option<u32>,
    /// Aloha transmit probability, `1/M` when absent.
    pub p: Option<f64>,
    pub c_source: PairSource,
    pub format: OutputFormat,
    pub workers: usize,
}

impl CampaignConfig {
    pub fn new(protocol: Protocol) -> Self {
        Self {
            protocol,
            n_slots: DEFAULT_SLOTS,
            seed: DEFAULT_SEED,
            users: None,
            p: None,
            c_source: PairSource::Qubit,
            format: OutputFormat::Text,
            workers: 1,
        }
    }

    pub fn users(&self) -> u32 {
        self.users.unwrap_or(DEFAULT_USERS)
    }

    pub fn p(&self) -> f64 {
        self.p.unwrap_or(1.0 / f64::from(self.users().max(1)))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_slots == 0 {
            return Err(ConfigError::new("slots", "must be at least 1"));
        }
        if self.workers == 0 {
            return Err(ConfigError::new("workers", "must be at least 1"));
        }
        if self.protocol != Protocol::Aloha {
            if self.users.is_some() {
                return Err(ConfigError::new(
                    "users",
                    "only applies to the aloha protocol",
                ));
            }
            if self.p.is_some() {
                return Err(ConfigError::new("p", "only applies to the aloha protocol"));
            }
        }
        if self.users == Some(0) {
            return Err(ConfigError::new("users", "must be at least 1"));
        }
        if let Some(p) = self.p {
            if !(0.0..=1.0).contains(&p) {
                return Err(ConfigError::new("p", format!("{p} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}
