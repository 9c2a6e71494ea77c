//! Optional `key = value` settings file; command-line flags win.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use crate::io::{fail, read_text, Exit, Format};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    pub format: Option<Format>,
    pub guard: Option<usize>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = read_text(Some(path))?;
        let config: Config = toml::from_str(&text)
            .map_err(|e| fail(Exit::Input, e.to_string()))
            .with_context(|| format!("config {}", path.display()))?;
        if config.max_seconds.is_some_and(|s| !(s.is_finite() && s >= 0.0)) {
            return Err(fail(Exit::Input, "config: max_seconds must be a non-negative number"));
        }
        Ok(config)
    }
}
