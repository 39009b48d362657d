//! Cost-model and search settings read from a TOML file.
//!
//! ```toml
//! x_node = 1.0          # node insertion/deletion
//! y_node = 1.0          # scale of node label distance on substitution
//! x_edge = 1.0
//! y_edge = 1.0
//! node_distance = "euclidean"   # or "discrete"
//! edge_distance = "absolute"    # or "discrete"
//! search = "astar"              # or "beam"
//! beam_width = 10
//! heuristic = "zero"            # or "count_bound"
//! ```
//!
//! Every key is optional; unknown keys are rejected.

use std::path::Path;

use serde::Deserialize;
use tged_core::ged::{EdgeDistance, NodeDistance};
use tged_core::{CostModel, Heuristic, SearchSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SearchChoice {
    #[default]
    Astar,
    Beam,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicChoice {
    #[default]
    Zero,
    CountBound,
}

impl From<HeuristicChoice> for Heuristic {
    fn from(h: HeuristicChoice) -> Self {
        match h {
            HeuristicChoice::Zero => Heuristic::Zero,
            HeuristicChoice::CountBound => Heuristic::CountBound,
        }
    }
}

pub const DEFAULT_BEAM_WIDTH: usize = 10;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostConfig {
    pub x_node: f64,
    pub y_node: f64,
    pub x_edge: f64,
    pub y_edge: f64,
    pub node_distance: NodeDistance,
    pub edge_distance: EdgeDistance,
    pub search: SearchChoice,
    pub beam_width: usize,
    pub heuristic: HeuristicChoice,
}

impl Default for CostConfig {
    fn default() -> Self {
        let cm = CostModel::default();
        CostConfig {
            x_node: cm.x_node,
            y_node: cm.y_node,
            x_edge: cm.x_edge,
            y_edge: cm.y_edge,
            node_distance: cm.node_distance,
            edge_distance: cm.edge_distance,
            search: SearchChoice::Astar,
            beam_width: DEFAULT_BEAM_WIDTH,
            heuristic: HeuristicChoice::Zero,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("config: {0}")]
    Invalid(String),
}

impl CostConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: CostConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.cost_model()?;
        if self.search == SearchChoice::Beam && self.beam_width == 0 {
            return Err(ConfigError::Invalid("beam_width must be at least 1".into()));
        }
        Ok(())
    }

    pub fn cost_model(&self) -> Result<CostModel, ConfigError> {
        let cm = CostModel {
            x_node: self.x_node,
            y_node: self.y_node,
            x_edge: self.x_edge,
            y_edge: self.y_edge,
            node_distance: self.node_distance,
            edge_distance: self.edge_distance,
        };
        cm.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(cm)
    }

    pub fn search_spec(&self) -> SearchSpec {
        let spec = match self.search {
            SearchChoice::Astar => SearchSpec::astar(),
            SearchChoice::Beam => SearchSpec::beam(self.beam_width),
        };
        spec.with_heuristic(self.heuristic.into())
    }
}
