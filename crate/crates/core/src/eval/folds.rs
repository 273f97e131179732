use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{ClassLabel, LabeledCorpus};
use crate::error::{Error, Result};

/// Test-fold index of every user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub k_folds: usize,
    pub fold_of: BTreeMap<String, usize>,
    pub rng_seed: u64,
}

impl FoldAssignment {
    /// Fold of each corpus document, in corpus order.
    pub fn folds_for(&self, corpus: &LabeledCorpus) -> Result<Vec<usize>> {
        corpus
            .documents()
            .iter()
            .map(|d| {
                self.fold_of
                    .get(d.user_id())
                    .copied()
                    .ok_or_else(|| Error::InvalidConfig(format!("user {} has no fold", d.user_id())))
            })
            .collect()
    }

    /// `(train, test)` document indices for `fold`.
    pub fn split(&self, corpus: &LabeledCorpus, fold: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let folds = self.folds_for(corpus)?;
        Ok((0..folds.len()).partition(|&i| folds[i] != fold))
    }

    /// Per-fold class counts, indexed `[fold][class]`.
    pub fn class_counts(&self, corpus: &LabeledCorpus) -> Result<Vec<[usize; 3]>> {
        let mut counts = vec![[0usize; 3]; self.k_folds];
        for (d, f) in corpus.documents().iter().zip(self.folds_for(corpus)?) {
            counts[f][d.label().index()] += 1;
        }
        Ok(counts)
    }
}

/// Shuffles each class with a seeded generator and deals its members round
/// robin. The dealing position carries over from one class to the next, so
/// fold sizes also differ by at most one.
pub fn stratified_folds(corpus: &LabeledCorpus, k: usize, rng_seed: u64) -> Result<FoldAssignment> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("need at least 2 folds, got {k}")));
    }
    let counts = corpus.class_counts();
    if let Some(l) = ClassLabel::ALL.into_iter().find(|l| counts[l.index()] == 0) {
        return Err(Error::TooFewInstances(format!("class {l} has no instances")));
    }
    if corpus.len() < k {
        return Err(Error::TooFewInstances(format!("{} instances for {k} folds", corpus.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut fold_of = BTreeMap::new();
    let mut dealt = 0usize;
    for label in ClassLabel::ALL {
        let mut members: Vec<&str> =
            corpus.documents().iter().filter(|d| d.label() == label).map(|d| d.user_id()).collect();
        members.shuffle(&mut rng);
        for user in members {
            fold_of.insert(user.to_string(), dealt % k);
            dealt += 1;
        }
    }
    Ok(FoldAssignment { k_folds: k, fold_of, rng_seed })
}
