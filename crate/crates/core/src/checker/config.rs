use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use super::verify::VerifyOptions;
use crate::membership::DEFAULT_SHIFT_CAP;

/// Environment variable naming a TOML configuration file.
pub const CONFIG_ENV: &str = "RINGPROOF_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfiguration {
    /// Keyed by `script/step`.
    pub degree_overrides: HashMap<String, usize>,
    pub shift_cap: usize,
    pub format: OutputFormat,
    pub parallelism: usize,
    /// Seed for randomized property tests.
    pub seed: u64,
}

impl Default for RunConfiguration {
    fn default() -> Self {
        RunConfiguration {
            degree_overrides: HashMap::new(),
            shift_cap: DEFAULT_SHIFT_CAP,
            format: OutputFormat::Text,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0} must be at least 1")]
    Invalid(&'static str),
}

impl RunConfiguration {
    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfiguration = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Reads the file named by `RINGPROOF_CONFIG`, or the defaults when unset.
    pub fn from_env() -> Result<Self, ConfigError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.shift_cap == 0 {
            return Err(ConfigError::Invalid("shift_cap"));
        }
        if self.parallelism == 0 {
            return Err(ConfigError::Invalid("parallelism"));
        }
        Ok(())
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            shift_cap: self.shift_cap,
            degree_overrides: self.degree_overrides.clone(),
        }
    }
}
