use std::path::Path;

use serde::Deserialize;
use streetwarp::composite::CompositeConfig;
use streetwarp::correspondence::CorrespondenceConfig;
use streetwarp::metrics::LossWeights;
use streetwarp::perturb::PerturbConfig;

use crate::Failure;

/// Contents of a `--config` TOML file. Every table is optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub correspondence: CorrespondenceConfig,
    pub perturb: PerturbConfig,
    pub composite: CompositeConfig,
    pub weights: LossWeights,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read config {}: {e}", path.display())))?;
        let config: FileConfig = toml::from_str(&text)
            .map_err(|e| Failure::input(format!("bad config {}: {e}", path.display())))?;
        config.correspondence.validate()?;
        config.perturb.validate()?;
        Ok(config)
    }
}
