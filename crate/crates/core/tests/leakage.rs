//! Held-out users must never influence the features they are scored on.

use std::collections::BTreeSet;

use stancekit::corpus::{build_user_documents, generate_synthetic_corpus, Tweet};
use stancekit::discovery::FeatureKind;
use stancekit::eval::{stratified_folds, FeatureSpec, FittedRanking, PreparedFolds};
use stancekit::features::LdaConfig;
use stancekit::{LabeledCorpus, SynthConfig};

fn small_corpus() -> LabeledCorpus {
    let cfg = SynthConfig { n_users: 120, tweets_per_user: (4, 8), rng_seed: 3, ..SynthConfig::default() };
    let s = generate_synthetic_corpus(&cfg).unwrap();
    build_user_documents(&s.tweets, &s.labels).unwrap()
}

fn spec(kind: FeatureKind) -> FeatureSpec {
    FeatureSpec { lda: LdaConfig { iterations: 5, ..LdaConfig::with_topics(3) }, ..FeatureSpec::new(kind) }
}

#[test]
fn fitting_reads_only_training_folds() {
    let corpus = small_corpus();
    let folds = stratified_folds(&corpus, 5, 1).unwrap();
    for kind in FeatureKind::ALL {
        let prepared = PreparedFolds::new(&corpus, &spec(kind), &folds).unwrap();
        let audits = prepared.audits();
        assert_eq!(audits.len(), 5);
        for audit in audits {
            let test: BTreeSet<&String> = audit.test_users.iter().collect();
            assert!(!audit.documents_read.is_empty());
            assert!(
                audit.documents_read.iter().all(|u| !test.contains(u)),
                "{} fold {} read a held-out user",
                kind.as_str(),
                audit.fold
            );
        }
    }
}

/// Marks every test-fold user of fold 0 with a token nobody else uses; no
/// fold-0 feature space may contain it.
#[test]
fn held_out_only_tokens_never_become_features() {
    let cfg = SynthConfig { n_users: 120, tweets_per_user: (4, 8), rng_seed: 3, ..SynthConfig::default() };
    let s = generate_synthetic_corpus(&cfg).unwrap();
    let corpus = build_user_documents(&s.tweets, &s.labels).unwrap();
    let folds = stratified_folds(&corpus, 5, 1).unwrap();
    let (_, test) = folds.split(&corpus, 0).unwrap();
    let marked: BTreeSet<String> = test.iter().map(|&i| corpus.documents()[i].user_id().to_string()).collect();

    let tweets: Vec<Tweet> = s
        .tweets
        .iter()
        .map(|t| {
            let mut t = t.clone();
            if marked.contains(&t.user_id) {
                t.text.push_str(" sızıntı #EVET #Sızıntı");
            }
            t
        })
        .collect();
    let leaky = build_user_documents(&tweets, &s.labels).unwrap();
    let (train, _) = folds.split(&leaky, 0).unwrap();
    let train_corpus = leaky.subset(&train);
    for kind in FeatureKind::ALL {
        let fitted = FittedRanking::fit(&spec(kind), &train_corpus).unwrap();
        let space = fitted.space(kind, 100_000);
        assert!(space.position("sızıntı").is_none(), "{} picked a held-out word", kind.as_str());
        assert!(space.position("#Sızıntı").is_none(), "{} picked a held-out hashtag", kind.as_str());
    }
    // Sanity: fitted on everyone, the marker is found.
    let fitted = FittedRanking::fit(&spec(FeatureKind::Hashtag), &leaky).unwrap();
    assert!(fitted.space(FeatureKind::Hashtag, 100_000).position("#Sızıntı").is_some());
}
