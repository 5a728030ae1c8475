//! Workbench configuration, loaded from a `workbench.toml` key/value
//! file. Every key has a default; flags override config values, and the
//! credential environment variables (`SCW_LLM_API_KEY`,
//! `SCW_EMBED_API_KEY`) are read by the clients directly and never live
//! in the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::pipeline::WireShape;

pub const DEFAULT_CONFIG_FILE: &str = "workbench.toml";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WorkbenchConfig {
    pub llm: LlmConfig,
    pub embedding: EmbeddingConfig,
    pub validator: ValidatorConfig,
    pub render: RenderConfig,
    pub paths: PathsConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LlmConfig {
    /// Completion endpoint URL; empty means not configured.
    pub endpoint_url: String,
    pub model: String,
    pub wire: WireShape,
    /// Opaque completion parameters passed through and recorded in run
    /// manifests.
    pub params: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmbeddingConfig {
    /// Embedding endpoint URL; empty means not configured.
    pub endpoint_url: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ValidatorConfig {
    pub allow_multiple_roots: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderConfig {
    pub wrap: usize,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig { wrap: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PathsConfig {
    /// Where generation runs are written.
    pub out_dir: PathBuf,
    /// Where the replay client looks for canned responses.
    pub replay_dir: PathBuf,
}

impl Default for PathsConfig {
    fn default() -> Self {
        PathsConfig {
            out_dir: PathBuf::from("runs"),
            replay_dir: PathBuf::from("replays"),
        }
    }
}

impl WorkbenchConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Loads an explicit config file, or `workbench.toml` when it exists,
    /// or the defaults.
    pub fn load_or_default(explicit: Option<&Path>) -> Result<Self, ConfigError> {
        match explicit {
            Some(path) => Self::load(path),
            None => {
                let default = Path::new(DEFAULT_CONFIG_FILE);
                if default.exists() {
                    Self::load(default)
                } else {
                    Ok(Self::default())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_has_a_default() {
        let config = WorkbenchConfig::default();
        assert_eq!(config.render.wrap, 30);
        assert_eq!(config.paths.out_dir, PathBuf::from("runs"));
        assert!(!config.validator.allow_multiple_roots);
        assert_eq!(config.llm.wire, WireShape::Chat);
        assert!(config.llm.endpoint_url.is_empty());
    }

    #[test]
    fn partial_files_fill_in_defaults() {
        let config: WorkbenchConfig = toml::from_str(
            "[llm]\nendpoint_url = \"http://localhost:9000/v1\"\nmodel = \"m\"\nwire = \"prompt\"\n\n[llm.params]\ntemperature = 0.2\n\n[render]\nwrap = 40\n",
        )
        .unwrap();
        assert_eq!(config.llm.endpoint_url, "http://localhost:9000/v1");
        assert_eq!(config.llm.wire, WireShape::Prompt);
        assert_eq!(config.llm.params["temperature"], serde_json::json!(0.2));
        assert_eq!(config.render.wrap, 40);
        assert_eq!(config.paths.replay_dir, PathBuf::from("replays"));
    }

    #[test]
    fn empty_file_is_all_defaults() {
        let config: WorkbenchConfig = toml::from_str("").unwrap();
        assert_eq!(config, WorkbenchConfig::default());
    }
}
