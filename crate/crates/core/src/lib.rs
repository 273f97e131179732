//! Stance classification for tweet authors.
//!
//! The crate covers the whole experiment pipeline:
//!
//! * [`corpus`] parses tweet streams, groups tweets into labeled per-user
//!   documents and generates synthetic corpora with planted structure.
//! * [`discovery`] ranks hashtags and words by Jaccard co-occurrence with
//!   seed hashtags and cuts them into feature spaces.
//! * [`features`] turns documents into sparse vectors (counts, tf-idf) and
//!   trains the Gibbs-sampled topic model used for term selection.
//! * [`learn`] holds the classifiers: one-vs-rest linear SVM, gain-ratio
//!   decision tree, random forest and the seed-hashtag vote baseline.
//! * [`eval`] runs stratified cross-validation and feature-size sweeps.

pub mod corpus;
pub mod discovery;
pub mod error;
pub mod eval;
pub mod features;
pub mod learn;

pub use corpus::{ClassLabel, LabeledCorpus, SynthConfig, Tweet, UserDocument};
pub use discovery::{FeatureKind, FeatureSpace, RankedFeatureList, SeedSets, Side};
pub use error::{Error, Result};
pub use eval::{ConfusionMatrix, FoldAssignment, SweepResult};
pub use features::{FeatureMatrix, FeatureVector, IdfTable, LdaModel};
pub use learn::{Classifier, ClassifierKind, TrainConfig};
