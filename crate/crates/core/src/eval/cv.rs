//! Leakage-free cross-validation: every statistic that shapes the feature
//! space is fitted on the training folds only.

use rayon::prelude::*;

use super::confusion::ConfusionMatrix;
use super::folds::FoldAssignment;
use crate::corpus::{ClassLabel, LabeledCorpus};
use crate::discovery::{build_feature_space, discover, FeatureKind, FeatureSpace, RankedFeatureList, SeedSets, TokenKind};
use crate::error::Result;
use crate::features::{
    count_terms, document_terms, idf_from_term_lists, lda_feature_space, term_frequencies, tfidf_from_terms,
    top_frequent_space, FeatureMatrix, FeatureVector, GibbsSampler, IdfTable, LdaConfig, TopicTerms,
};
use crate::learn::{Classifier, TrainConfig};

/// How documents become vectors, short of the size parameter `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpec {
    pub kind: FeatureKind,
    pub seeds: SeedSets,
    pub lda: LdaConfig,
}

impl FeatureSpec {
    pub fn new(kind: FeatureKind) -> Self {
        FeatureSpec { kind, seeds: SeedSets::default(), lda: LdaConfig::default() }
    }
}

/// The k-independent part of a feature space, fitted on training documents.
#[derive(Debug, Clone)]
pub enum FeatureRanking {
    /// Disjoint side lists from seed co-occurrence (hashtag and bag-of-words).
    Discovered { yes: RankedFeatureList, no: RankedFeatureList },
    /// Words by corpus frequency (tf-idf).
    Frequency(Vec<(String, u64)>),
    /// Topic-word distributions (LDA).
    Topics(TopicTerms),
}

/// A fitted ranking plus the user ids whose text the fit read.
#[derive(Debug, Clone)]
pub struct FittedRanking {
    pub ranking: FeatureRanking,
    pub documents_read: Vec<String>,
}

impl FittedRanking {
    pub fn fit(spec: &FeatureSpec, train: &LabeledCorpus) -> Result<Self> {
        let all_ids = || train.documents().iter().map(|d| d.user_id().to_string()).collect();
        Ok(match spec.kind {
            FeatureKind::Hashtag | FeatureKind::Bow => {
                let token_kind = if spec.kind == FeatureKind::Hashtag { TokenKind::Hashtag } else { TokenKind::Word };
                let (yes, no) = discover(train, &spec.seeds, token_kind)?;
                FittedRanking { ranking: FeatureRanking::Discovered { yes, no }, documents_read: all_ids() }
            }
            FeatureKind::Tfidf => {
                FittedRanking { ranking: FeatureRanking::Frequency(term_frequencies(train)), documents_read: all_ids() }
            }
            FeatureKind::Lda => {
                let mut sampler = GibbsSampler::new(train, &spec.lda)?;
                for _ in 0..spec.lda.iterations {
                    sampler.sweep();
                }
                let documents_read = sampler.doc_ids().to_vec();
                FittedRanking { ranking: FeatureRanking::Topics(sampler.into_model().topics), documents_read }
            }
        })
    }

    pub fn space(&self, kind: FeatureKind, k: usize) -> FeatureSpace {
        match &self.ranking {
            FeatureRanking::Discovered { yes, no } => build_feature_space(yes, no, k, kind),
            FeatureRanking::Frequency(ranked) => top_frequent_space(ranked, k),
            FeatureRanking::Topics(topics) => lda_feature_space(topics, k),
        }
    }
}

/// A concrete vectorizer: a space, plus idf weights for tf-idf.
#[derive(Debug, Clone)]
pub struct Featurizer {
    pub space: FeatureSpace,
    pub idf: Option<IdfTable>,
}

impl Featurizer {
    /// `train_terms` are the training documents' terms for the space kind.
    pub fn new(space: FeatureSpace, train_terms: &[&[String]]) -> Result<Self> {
        let idf = match space.kind() {
            FeatureKind::Tfidf => Some(idf_from_term_lists(train_terms.iter().copied(), &space)?),
            _ => None,
        };
        Ok(Featurizer { space, idf })
    }

    pub fn vectorize_terms(&self, terms: &[String]) -> FeatureVector {
        match &self.idf {
            Some(idf) => tfidf_from_terms(terms, &self.space, idf),
            None => count_terms(terms, &self.space),
        }
    }
}

/// Anything that can label a held-out row.
pub trait Predictor {
    fn predict_row(&self, user_id: &str, v: &FeatureVector) -> Result<ClassLabel>;
}

impl Predictor for Classifier {
    fn predict_row(&self, _user_id: &str, v: &FeatureVector) -> Result<ClassLabel> {
        self.predict(v)
    }
}

/// Per-fold record of which documents fed feature fitting.
#[derive(Debug, Clone)]
pub struct FoldAudit {
    pub fold: usize,
    pub test_users: Vec<String>,
    pub documents_read: Vec<String>,
}

/// Corpus prepared for repeated cross-validation of one feature family:
/// fold splits, per-document terms and per-fold fitted rankings.
pub struct PreparedFolds<'c> {
    corpus: &'c LabeledCorpus,
    kind: FeatureKind,
    terms: Vec<Vec<String>>,
    splits: Vec<(Vec<usize>, Vec<usize>)>,
    rankings: Vec<FittedRanking>,
}

impl<'c> PreparedFolds<'c> {
    pub fn new(corpus: &'c LabeledCorpus, spec: &FeatureSpec, folds: &FoldAssignment) -> Result<Self> {
        let splits: Vec<(Vec<usize>, Vec<usize>)> =
            (0..folds.k_folds).map(|f| folds.split(corpus, f)).collect::<Result<_>>()?;
        let rankings = splits
            .par_iter()
            .map(|(train, _)| FittedRanking::fit(spec, &corpus.subset(train)))
            .collect::<Result<Vec<_>>>()?;
        let terms = corpus.documents().par_iter().map(|d| document_terms(d, spec.kind)).collect();
        Ok(PreparedFolds { corpus, kind: spec.kind, terms, splits, rankings })
    }

    pub fn audits(&self) -> Vec<FoldAudit> {
        self.splits
            .iter()
            .zip(&self.rankings)
            .enumerate()
            .map(|(fold, ((_, test), r))| FoldAudit {
                fold,
                test_users: test.iter().map(|&i| self.corpus.documents()[i].user_id().to_string()).collect(),
                documents_read: r.documents_read.clone(),
            })
            .collect()
    }

    fn matrix(&self, featurizer: &Featurizer, idx: &[usize]) -> Result<FeatureMatrix> {
        let rows = idx
            .iter()
            .map(|&i| {
                let d = &self.corpus.documents()[i];
                (d.user_id().to_string(), featurizer.vectorize_terms(&self.terms[i]), d.label())
            })
            .collect();
        FeatureMatrix::new(featurizer.space.len(), rows)
    }

    /// Pooled confusion matrix over all test folds for feature size `k`.
    pub fn evaluate<P, F>(&self, k: usize, train_fn: F) -> Result<ConfusionMatrix>
    where
        P: Predictor,
        F: Fn(&FeatureMatrix, usize) -> Result<P>,
    {
        let mut pooled = ConfusionMatrix::default();
        for (fold, ((train, test), ranking)) in self.splits.iter().zip(&self.rankings).enumerate() {
            let space = ranking.space(self.kind, k);
            let train_terms: Vec<&[String]> = train.iter().map(|&i| self.terms[i].as_slice()).collect();
            let featurizer = Featurizer::new(space, &train_terms)?;
            let model = train_fn(&self.matrix(&featurizer, train)?, fold)?;
            let held_out = self.matrix(&featurizer, test)?;
            for (user, v, truth) in held_out.rows() {
                pooled.record(*truth, model.predict_row(user, v)?);
            }
        }
        Ok(pooled)
    }

    pub fn evaluate_classifier(&self, k: usize, cfg: &TrainConfig) -> Result<ConfusionMatrix> {
        self.evaluate(k, |m, fold| Classifier::train(m, &fold_config(cfg, fold)))
    }
}

/// Training config for one fold: the seed is mixed with the fold index.
pub fn fold_config(cfg: &TrainConfig, fold: usize) -> TrainConfig {
    let rng_seed = cfg.rng_seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    TrainConfig { rng_seed, ..cfg.clone() }
}

/// Stratified cross-validation of one feature family, size and learner.
pub fn cross_validate(
    corpus: &LabeledCorpus,
    spec: &FeatureSpec,
    k: usize,
    cfg: &TrainConfig,
    folds: &FoldAssignment,
) -> Result<ConfusionMatrix> {
    PreparedFolds::new(corpus, spec, folds)?.evaluate_classifier(k, cfg)
}

/// The seed-vote baseline over the whole corpus; it has nothing to fit.
pub fn evaluate_baseline(corpus: &LabeledCorpus, seeds: &SeedSets) -> ConfusionMatrix {
    let mut m = ConfusionMatrix::default();
    for d in corpus.documents() {
        m.record(d.label(), crate::learn::baseline_classify(d, seeds));
    }
    m
}
