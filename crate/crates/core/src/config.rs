//! Flat key/value run configuration, read from TOML.
//!
//! ```toml
//! pc.fragments = ["concept-instantiation", "property-instantiation", "subsumption", "annotation"]
//! sf.denominator = "populated"        # or "all"
//! mcq.max_distractors = 3
//! multi_entity.pair_cap = 3
//! membership.inferred = false
//! annotations.instance_comments = false
//! strategies = ["all"]
//! ```
//!
//! Every key is optional; missing keys keep their defaults.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::ingest::IngestOptions;
use crate::metrics::{FragmentKind, MetricsConfig, SfDenominator};
use crate::qgen::{parse_strategies, QGenConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid config value: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Settings {
    pub metrics: MetricsConfig,
    pub qgen: QGenConfig,
    pub ingest: IngestOptions,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    pc: Option<PcKeys>,
    sf: Option<SfKeys>,
    mcq: Option<McqKeys>,
    multi_entity: Option<MultiEntityKeys>,
    membership: Option<MembershipKeys>,
    annotations: Option<AnnotationKeys>,
    strategies: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PcKeys {
    fragments: Option<Vec<FragmentKind>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SfKeys {
    denominator: Option<SfDenominator>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct McqKeys {
    max_distractors: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiEntityKeys {
    pair_cap: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MembershipKeys {
    inferred: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnotationKeys {
    instance_comments: Option<bool>,
}

impl Settings {
    pub fn from_toml_str(text: &str) -> Result<Settings, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        let mut s = Settings::default();
        if let Some(fragments) = raw.pc.and_then(|k| k.fragments) {
            if fragments.is_empty() {
                return Err(ConfigError::Invalid(
                    "pc.fragments must not be empty".into(),
                ));
            }
            s.metrics.fragments = fragments;
        }
        if let Some(d) = raw.sf.and_then(|k| k.denominator) {
            s.metrics.sf_denominator = d;
        }
        if let Some(n) = raw.mcq.and_then(|k| k.max_distractors) {
            s.qgen.max_distractors = n;
        }
        if let Some(n) = raw.multi_entity.and_then(|k| k.pair_cap) {
            s.qgen.pair_cap = n;
        }
        if let Some(b) = raw.membership.and_then(|k| k.inferred) {
            s.ingest.inferred_membership = b;
        }
        if let Some(b) = raw.annotations.and_then(|k| k.instance_comments) {
            s.qgen.instance_comments = b;
        }
        if let Some(names) = raw.strategies {
            s.qgen.strategies =
                parse_strategies(&names).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        s.validate()?;
        Ok(s)
    }

    pub fn from_path(path: &Path) -> Result<Settings, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Settings::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.qgen.max_distractors < 1 {
            return Err(ConfigError::Invalid(
                "mcq.max_distractors must be at least 1".into(),
            ));
        }
        if self.qgen.pair_cap < 1 {
            return Err(ConfigError::Invalid(
                "multi_entity.pair_cap must be at least 1".into(),
            ));
        }
        if self.metrics.fragments.is_empty() {
            return Err(ConfigError::Invalid(
                "pc.fragments must not be empty".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgen::Strategy;

    #[test]
    fn empty_file_is_default() {
        assert_eq!(Settings::from_toml_str("").unwrap(), Settings::default());
    }

    #[test]
    fn dotted_keys() {
        let s = Settings::from_toml_str(
            r#"
pc.fragments = ["subsumption", "annotation", "concept-instantiation"]
sf.denominator = "all"
mcq.max_distractors = 5
multi_entity.pair_cap = 1
membership.inferred = true
annotations.instance_comments = true
strategies = ["mcq", "terminology"]
"#,
        )
        .unwrap();
        assert_eq!(s.metrics.fragments.len(), 3);
        assert_eq!(s.metrics.sf_denominator, SfDenominator::All);
        assert_eq!(s.qgen.max_distractors, 5);
        assert_eq!(s.qgen.pair_cap, 1);
        assert!(s.ingest.inferred_membership);
        assert!(s.qgen.instance_comments);
        assert_eq!(s.qgen.strategies.len(), 2);
        assert!(s.qgen.strategies.contains(&Strategy::Mcq));
    }

    #[test]
    fn table_form_is_equivalent() {
        let a = Settings::from_toml_str("[sf]\ndenominator = \"all\"\n").unwrap();
        let b = Settings::from_toml_str("sf.denominator = \"all\"\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_values() {
        for bad in [
            "mcq.max_distractors = 0",
            "multi_entity.pair_cap = 0",
            "pc.fragments = []",
            "pc.fragments = [\"triangle\"]",
            "sf.denominator = \"some\"",
            "strategies = [\"quiz\"]",
            "unknown.key = 1",
        ] {
            assert!(Settings::from_toml_str(bad).is_err(), "{bad}");
        }
    }
}
