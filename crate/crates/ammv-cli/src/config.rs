use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Deserialize;

use ammv::numerics::EvalConfig;

pub const CONFIG_ENV: &str = "AMMV_CONFIG";

/// Settings read from a TOML file. Every field is optional.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub digits: u32,
    /// Value cache, loaded at start and rewritten at exit.
    pub cache: Option<PathBuf>,
    /// Relation store used by `dims` and as the default for `--out`.
    pub store: Option<PathBuf>,
    pub n0: u64,
    pub max_levels: u32,
    pub max_weight: u32,
    pub allow_high_precision: bool,
}

impl Default for Config {
    fn default() -> Self {
        let e = EvalConfig::default();
        Config {
            digits: 30,
            cache: None,
            store: None,
            n0: e.n0,
            max_levels: e.max_levels,
            max_weight: 4,
            allow_high_precision: false,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let c: Config = toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        c.validate()?;
        Ok(c)
    }

    /// The file named by `--config`, else by `AMMV_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> anyhow::Result<Config> {
        match explicit {
            Some(p) => Config::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
                _ => Ok(Config::default()),
            },
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.digits == 0 || self.n0 == 0 || self.max_levels == 0 || self.max_weight == 0 {
            bail!("config budgets must be positive");
        }
        if self.n0 % 4 != 0 {
            bail!("n0 must be a multiple of 4, got {}", self.n0);
        }
        for p in [&self.cache, &self.store].into_iter().flatten() {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                if !dir.is_dir() {
                    bail!("directory of {} does not exist", p.display());
                }
            }
        }
        Ok(())
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            n0: self.n0,
            max_levels: self.max_levels,
            allow_high_precision: self.allow_high_precision,
            ..EvalConfig::default()
        }
    }
}
