use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Svm,
    Tree,
    Forest,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 3] = [ClassifierKind::Svm, ClassifierKind::Tree, ClassifierKind::Forest];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::Svm => "svm",
            ClassifierKind::Tree => "tree",
            ClassifierKind::Forest => "forest",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassifierKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown classifier {s:?}")))
    }
}

/// Hyperparameters for every learner; each learner reads its own fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub kind: ClassifierKind,
    /// SVM soft-margin penalty.
    pub c: f64,
    /// SVM stopping threshold on the largest projected-gradient violation.
    pub tol: f64,
    pub max_epochs: usize,
    /// Smallest number of instances a tree leaf may hold.
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    pub n_trees: usize,
    /// Candidate features per forest split; `None` means `ceil(sqrt(dim))`.
    pub features_per_split: Option<usize>,
    pub bootstrap: bool,
    pub rng_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            kind: ClassifierKind::Svm,
            c: 1.0,
            tol: 1e-3,
            max_epochs: 200,
            min_leaf: 2,
            max_depth: None,
            n_trees: 100,
            features_per_split: None,
            bootstrap: true,
            rng_seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn for_kind(kind: ClassifierKind) -> Self {
        TrainConfig { kind, ..TrainConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.tol > 0.0) {
            return Err(Error::InvalidConfig("c and tol must be positive".into()));
        }
        if self.max_epochs == 0 || self.min_leaf == 0 || self.n_trees == 0 || self.max_depth == Some(0) {
            return Err(Error::InvalidConfig("epochs, min_leaf, n_trees and max_depth must be positive".into()));
        }
        if self.features_per_split == Some(0) {
            return Err(Error::InvalidConfig("features_per_split must be positive".into()));
        }
        Ok(())
    }
}
