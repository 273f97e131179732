//! Fixtures shared by the benchmarks in `benches/`.

use stancekit::corpus::{build_user_documents, generate_synthetic_corpus, SyntheticCorpus};
use stancekit::discovery::FeatureKind;
use stancekit::eval::{FeatureSpec, Featurizer, FittedRanking};
use stancekit::features::{document_terms, FeatureMatrix};
use stancekit::{LabeledCorpus, SynthConfig};

/// A default-shaped synthetic corpus scaled to `n_users`.
pub fn corpus(n_users: usize) -> (SyntheticCorpus, LabeledCorpus) {
    let cfg = SynthConfig { n_users, ..SynthConfig::default() };
    let synthetic = generate_synthetic_corpus(&cfg).expect("valid config");
    let corpus = build_user_documents(&synthetic.tweets, &synthetic.labels).expect("every user tweets");
    (synthetic, corpus)
}

/// Feature matrix over the whole corpus, with the space fitted on it too.
pub fn matrix(corpus: &LabeledCorpus, kind: FeatureKind, k: usize) -> FeatureMatrix {
    let space = FittedRanking::fit(&FeatureSpec::new(kind), corpus).expect("fit").space(kind, k);
    let terms: Vec<Vec<String>> = corpus.documents().iter().map(|d| document_terms(d, kind)).collect();
    let refs: Vec<&[String]> = terms.iter().map(Vec::as_slice).collect();
    let featurizer = Featurizer::new(space, &refs).expect("idf");
    let rows = corpus
        .documents()
        .iter()
        .zip(&terms)
        .map(|(d, t)| (d.user_id().to_string(), featurizer.vectorize_terms(t), d.label()))
        .collect();
    FeatureMatrix::new(featurizer.space.len(), rows).expect("rows match space")
}
