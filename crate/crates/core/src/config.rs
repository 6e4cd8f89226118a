//! Run configuration: defaults, optional TOML file, command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "KMTOWER_CONFIG";

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot parse config {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("config field {0} must be positive")]
    NotPositive(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub height_bound: u32,
    pub search_depth: usize,
    pub max_roots: usize,
    /// Largest matrix realization (rows) the suites may build.
    pub max_matrix_size: usize,
    pub parallelism: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            height_bound: 12,
            search_depth: 8,
            max_roots: 2_000_000,
            max_matrix_size: 64,
            parallelism: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fields = [
            ("height_bound", self.height_bound as usize),
            ("search_depth", self.search_depth),
            ("max_roots", self.max_roots),
            ("max_matrix_size", self.max_matrix_size),
            ("parallelism", self.parallelism),
        ];
        match fields.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(ConfigError::NotPositive(name)),
            None => Ok(()),
        }
    }

    /// Parameters echoed into reports. Parallelism is left out so that
    /// reports do not depend on the machine.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "height_bound": self.height_bound,
            "search_depth": self.search_depth,
            "max_roots": self.max_roots,
            "max_matrix_size": self.max_matrix_size,
            "seed": self.seed,
        })
    }
}

pub fn parse_config(text: &str, path: &Path) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig =
        toml::from_str(text).map_err(|source| ConfigError::Parse { path: path.to_path_buf(), source })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Loads `path`, else the file named by [`CONFIG_ENV`], else the defaults.
pub fn load_config(path: Option<&Path>) -> Result<RunConfig, ConfigError> {
    let from_env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(from_env) {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|source| ConfigError::Read { path: p.clone(), source })?;
            parse_config(&text, &p)
        }
        None => Ok(RunConfig::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let d = RunConfig::default();
        assert_eq!((d.height_bound, d.search_depth), (12, 8));
        let c = parse_config("height_bound = 20\n", Path::new("x.toml")).unwrap();
        assert_eq!(c.height_bound, 20);
        assert_eq!(c.search_depth, 8);
        assert!(parse_config("search_depth = 0", Path::new("x")).is_err());
        assert!(parse_config("bogus = 1", Path::new("x")).is_err());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_config(Some(Path::new("/nonexistent/k.toml"))), Err(ConfigError::Read { .. })));
    }
}
