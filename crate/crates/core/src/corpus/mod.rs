//! Tweets, labeled user documents, ingestion and synthetic corpora.

mod io;
mod model;
mod synth;
pub mod text;
mod users;

pub use io::{
    format_tweet_record, parse_tweet_record, read_labels, read_labels_path, read_tweet_files,
    read_tweets, read_tweets_path, write_labels, write_tweets,
};
pub use model::{ClassLabel, LabeledCorpus, Tweet, UserDocument};
pub use synth::{generate_synthetic_corpus, PlantedVocabulary, SynthConfig, SyntheticCorpus};
pub use text::{extract_hashtags, strip_entities, tokenize};
pub use users::{build_user_documents, filter_active_users, retweet_counts, stratified_sample_by_activity};
