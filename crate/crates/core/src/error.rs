use std::io;

/// Errors raised anywhere in the pipeline.
///
/// Every message starts with the variant name so command-line diagnostics
/// can be matched on.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("MalformedRecord: {0}")]
    MalformedRecord(String),
    #[error("MissingField: {0}")]
    MissingField(String),
    #[error("LabeledUserWithoutTweets: {}", .0.join(","))]
    LabeledUserWithoutTweets(Vec<String>),
    #[error("InsufficientUsers: requested {requested}, available {available}")]
    InsufficientUsers { requested: usize, available: usize },
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("NoSeedOccurrences: no tweet contains a seed hashtag")]
    NoSeedOccurrences,
    #[error("BothEmpty: jaccard of two empty sets is undefined")]
    BothEmpty,
    #[error("TokenAbsentFromCorpus: {0}")]
    TokenAbsentFromCorpus(String),
    #[error("EmptyDictionary: no terms left to model")]
    EmptyDictionary,
    #[error("SingleClassInput: training data must contain at least two classes")]
    SingleClassInput,
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("TooFewInstances: {0}")]
    TooFewInstances(String),
    #[error("EmptyMatrix: confusion matrix has no instances")]
    EmptyMatrix,
    #[error("ModelFormat: {0}")]
    ModelFormat(String),
    #[error("Io: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
