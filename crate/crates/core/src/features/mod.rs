//! Document vectorizers and the topic model used for term selection.

mod counts;
mod lda;
mod tfidf;
mod vector;

pub use counts::{
    count_terms, count_vectorize, document_terms, select_top_frequent_terms, term_frequencies, text_terms,
    top_frequent_space,
};
pub use lda::{
    lda_feature_space, lda_train, read_topic_terms, write_topic_terms, GibbsSampler, LdaConfig, LdaModel, TopicTerms,
};
pub use tfidf::{compute_idf, idf_from_term_lists, tfidf_from_terms, tfidf_vectorize, IdfTable};
pub use vector::{read_feature_matrix, write_feature_matrix, FeatureMatrix, FeatureVector};
