//! Run configuration: a sectioned `key = value` file (TOML).
//!
//! ```toml
//! [run]
//! seed = 42
//! samples = 1000
//! radius = 4
//!
//! [objects]
//! group = "z2"
//! pair = "pnorm:2"
//! weight = "poly:1"
//! cocycle = "poly:1"
//!
//! [tolerances]
//! duality = 1e-10
//! ```
//!
//! Every key is optional. Tolerance overrides are keyed by invariant id.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use orlicz_core::cocycle::Cocycle;
use orlicz_core::group::{Group, Weight};
use orlicz_core::young::{catalog, ComplementaryPair};
use serde::{Deserialize, Serialize};

/// Names the environment variable holding the default config path.
pub const CONFIG_ENV: &str = "ORLICZ_LAB_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Syntax(String),
    #[error("invalid config value: {0}")]
    Value(#[from] orlicz_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    /// Size of the large random sweeps; triple-based checks use a tenth.
    pub samples: usize,
    /// Ball radius for the configured-object cases.
    pub radius: u32,
}

impl Default for RunSection {
    fn default() -> Self {
        Self { seed: 42, samples: 1000, radius: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObjectSection {
    pub group: String,
    pub pair: String,
    pub weight: String,
    pub cocycle: String,
}

impl Default for ObjectSection {
    fn default() -> Self {
        Self {
            group: "z2".into(),
            pair: "pnorm:2".into(),
            weight: "poly:1".into(),
            cocycle: "poly:1".into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub run: RunSection,
    pub objects: ObjectSection,
    pub tolerances: BTreeMap<String, f64>,
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical text; parsing it yields the same config.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn read(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Reads `explicit` if given, else the file named by [`CONFIG_ENV`],
    /// else returns the defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self, ConfigError> {
        if let Some(p) = explicit {
            return Self::read(p);
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::read(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.run.samples == 0 || self.run.radius == 0 {
            return Err(ConfigError::Syntax("samples and radius must be positive".into()));
        }
        for (k, v) in &self.tolerances {
            if !(v.is_finite() && *v >= 0.0) {
                return Err(ConfigError::Syntax(format!("tolerance {k} must be finite and nonnegative")));
            }
        }
        self.group()?;
        self.pair()?;
        self.weight()?;
        self.cocycle()?;
        Ok(())
    }

    pub fn group(&self) -> Result<Arc<Group>, ConfigError> {
        Ok(Arc::new(Group::parse(&self.objects.group)?))
    }

    pub fn pair(&self) -> Result<ComplementaryPair<f64>, ConfigError> {
        Ok(catalog::pair(&self.objects.pair)?)
    }

    pub fn weight(&self) -> Result<Weight<f64>, ConfigError> {
        Ok(Weight::parse(self.group()?, &self.objects.weight)?)
    }

    pub fn cocycle(&self) -> Result<Cocycle<f64>, ConfigError> {
        Ok(Cocycle::parse(self.group()?, &self.objects.cocycle)?)
    }

    pub fn tolerance(&self, invariant: &str, default: f64) -> f64 {
        self.tolerances.get(invariant).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(SuiteConfig::from_toml("").unwrap(), SuiteConfig::default());
    }

    #[test]
    fn canonical_round_trip() {
        let text = "[run]\nseed = 7\n\n[objects]\ngroup = \"heis\"\n\n[tolerances]\nduality = 1e-9\n";
        let cfg = SuiteConfig::from_toml(text).unwrap();
        assert_eq!(cfg.run.seed, 7);
        assert_eq!(cfg.run.samples, 1000);
        let canon = cfg.to_toml();
        let again = SuiteConfig::from_toml(&canon).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.to_toml(), canon);
        assert_eq!(SuiteConfig::default().to_toml(), SuiteConfig::from_toml(&SuiteConfig::default().to_toml()).unwrap().to_toml());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(SuiteConfig::from_toml("[run]\nsamples = 0\n"), Err(ConfigError::Syntax(_))));
        assert!(matches!(SuiteConfig::from_toml("[objects]\ngroup = \"q8\"\n"), Err(ConfigError::Value(_))));
        assert!(matches!(SuiteConfig::from_toml("[run]\nbogus = 1\n"), Err(ConfigError::Syntax(_))));
        assert!(SuiteConfig::from_toml("[tolerances]\nx = -1.0\n").is_err());
    }
}
