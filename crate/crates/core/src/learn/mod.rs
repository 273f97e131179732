//! Three-class learners and the seed-hashtag vote baseline.

mod baseline;
mod config;
mod forest;
mod svm;
mod tree;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub use baseline::{baseline_classify, seed_votes};
pub use config::{ClassifierKind, TrainConfig};
pub use forest::{default_features_per_split, forest_predict, forest_train, plurality, RandomForestModel};
pub use svm::{argmax_label, solve_dual, svm_predict, svm_train, svm_train_traced, DualSolution, LinearSvmModel};
pub use tree::{entropy, majority, score_partition, tree_predict, tree_train, DecisionTreeModel, Node, SplitChoice, MIN_GAIN};

use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureVector};

/// Any trained learner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Classifier {
    Svm(LinearSvmModel),
    Tree(DecisionTreeModel),
    Forest(RandomForestModel),
}

impl Classifier {
    pub fn train(matrix: &FeatureMatrix, cfg: &TrainConfig) -> Result<Self> {
        Ok(match cfg.kind {
            ClassifierKind::Svm => Classifier::Svm(svm_train(matrix, cfg)?),
            ClassifierKind::Tree => Classifier::Tree(tree_train(matrix, cfg)?),
            ClassifierKind::Forest => Classifier::Forest(forest_train(matrix, cfg)?),
        })
    }

    pub fn kind(&self) -> ClassifierKind {
        match self {
            Classifier::Svm(_) => ClassifierKind::Svm,
            Classifier::Tree(_) => ClassifierKind::Tree,
            Classifier::Forest(_) => ClassifierKind::Forest,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Classifier::Svm(m) => m.dimension,
            Classifier::Tree(m) => m.dimension,
            Classifier::Forest(m) => m.dimension,
        }
    }

    pub fn predict(&self, v: &FeatureVector) -> Result<ClassLabel> {
        if v.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), found: v.dimension() });
        }
        Ok(match self {
            Classifier::Svm(m) => svm_predict(m, v)?.0,
            Classifier::Tree(m) => tree_predict(m, v),
            Classifier::Forest(m) => forest_predict(m, v),
        })
    }
}

const FORMAT: &str = "stancekit-model";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    model: Classifier,
}

/// Writes a versioned JSON model file. Floats use shortest round-trip
/// formatting, so write → read → write reproduces the same bytes.
pub fn write_model<W: Write>(w: W, model: &Classifier) -> Result<()> {
    let file = ModelFile { format: FORMAT.into(), version: VERSION, model: model.clone() };
    serde_json::to_writer(w, &file).map_err(|e| Error::ModelFormat(e.to_string()))
}

pub fn read_model<R: Read>(r: R) -> Result<Classifier> {
    let file: ModelFile = serde_json::from_reader(r).map_err(|e| Error::ModelFormat(e.to_string()))?;
    if file.format != FORMAT || file.version != VERSION {
        return Err(Error::ModelFormat(format!("unsupported model {} v{}", file.format, file.version)));
    }
    Ok(file.model)
}
