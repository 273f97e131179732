use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::TrainConfig;
use super::tree::{grow_tree, tree_predict, DecisionTreeModel, FeatureSampler};
use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForestModel {
    pub dimension: usize,
    pub n_trees: usize,
    pub features_per_split: usize,
    pub bootstrap: bool,
    pub rng_seed: u64,
    /// Seed each tree was grown from.
    pub tree_seeds: Vec<u64>,
    pub trees: Vec<DecisionTreeModel>,
}

/// `ceil(sqrt(dimension))`, at least 1.
pub fn default_features_per_split(dimension: usize) -> usize {
    ((dimension as f64).sqrt().ceil() as usize).max(1)
}

/// Bagged gain-ratio trees with per-split feature subsampling.
pub fn forest_train(matrix: &FeatureMatrix, cfg: &TrainConfig) -> Result<RandomForestModel> {
    cfg.validate()?;
    if matrix.is_empty() {
        return Err(Error::TooFewInstances("empty training matrix".into()));
    }
    let dimension = matrix.dimension();
    let features_per_split = cfg
        .features_per_split
        .unwrap_or_else(|| default_features_per_split(dimension))
        .min(dimension.max(1));
    let mut master = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let tree_seeds: Vec<u64> = (0..cfg.n_trees).map(|_| master.gen()).collect();
    let n = matrix.len();

    let trees = tree_seeds
        .par_iter()
        .map(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = if cfg.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let sampler = (features_per_split < dimension)
                .then(|| FeatureSampler::new(&mut rng, features_per_split, dimension));
            grow_tree(matrix, &idx, cfg.min_leaf, cfg.max_depth, sampler)
        })
        .collect();

    Ok(RandomForestModel {
        dimension,
        n_trees: cfg.n_trees,
        features_per_split,
        bootstrap: cfg.bootstrap,
        rng_seed: cfg.rng_seed,
        tree_seeds,
        trees,
    })
}

/// Plurality of votes; ties go to the earliest class.
pub fn plurality(votes: impl IntoIterator<Item = ClassLabel>) -> ClassLabel {
    let mut counts = [0usize; 3];
    for v in votes {
        counts[v.index()] += 1;
    }
    super::tree::majority(&counts)
}

pub fn forest_predict(model: &RandomForestModel, v: &FeatureVector) -> ClassLabel {
    plurality(model.trees.iter().map(|t| tree_predict(t, v)))
}
