//! Count and tf-idf vectors against hand recounts over plain ASCII text,
//! where tokenization is just whitespace splitting.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stancekit::corpus::{build_user_documents, Tweet};
use stancekit::discovery::{FeatureKind, FeatureSpace, Provenance};
use stancekit::features::{compute_idf, count_vectorize, tfidf_vectorize};
use stancekit::{ClassLabel, LabeledCorpus};

const WORDS: [&str; 8] = ["oy", "sandik", "secim", "evet", "hayir", "referandum", "anayasa", "halk"];

fn random_corpus(seed: u64) -> (LabeledCorpus, BTreeMap<String, Vec<String>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = Utc.with_ymd_and_hms(2017, 4, 1, 0, 0, 0).unwrap();
    let mut tweets = Vec::new();
    let mut labels = BTreeMap::new();
    let mut words_by_user: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for u in 0..15 {
        let user = format!("u{u}");
        labels.insert(user.clone(), ClassLabel::ALL[u % 3]);
        for t in 0..rng.gen_range(1..5) {
            let words: Vec<&str> = (0..rng.gen_range(1..7)).map(|_| WORDS[rng.gen_range(0..WORDS.len())]).collect();
            words_by_user.entry(user.clone()).or_default().extend(words.iter().map(|w| w.to_string()));
            tweets.push(Tweet::new(format!("{user}-{t}"), user.clone(), ts, words.join(" ")));
        }
    }
    (build_user_documents(&tweets, &labels).unwrap(), words_by_user)
}

fn space(kind: FeatureKind, tokens: &[&str]) -> FeatureSpace {
    FeatureSpace::new(kind, tokens.len(), tokens.iter().map(|t| (t.to_string(), Provenance::Frequency { count: 0 })))
}

#[test]
fn counts_match_recount() {
    for seed in 0..20 {
        let (corpus, words) = random_corpus(seed);
        let sp = space(FeatureKind::Bow, &WORDS[..5]);
        for doc in corpus.documents() {
            let v = count_vectorize(doc, &sp);
            for (j, w) in WORDS[..5].iter().enumerate() {
                let expected = words[doc.user_id()].iter().filter(|x| x == w).count() as f64;
                assert_eq!(v.get(j), expected, "seed {seed} user {} word {w}", doc.user_id());
            }
        }
    }
}

#[test]
fn tfidf_matches_formula() {
    for seed in 0..20 {
        let (corpus, words) = random_corpus(seed);
        let present: BTreeSet<&str> = words.values().flatten().map(String::as_str).collect();
        let tokens: Vec<&str> = WORDS.iter().copied().filter(|w| present.contains(w)).collect();
        let sp = space(FeatureKind::Tfidf, &tokens);
        let idf = compute_idf(&corpus, &sp).unwrap();
        let n = corpus.len() as f64;
        for doc in corpus.documents() {
            let raw: Vec<f64> = tokens
                .iter()
                .map(|w| {
                    let tf = words[doc.user_id()].iter().filter(|x| x == w).count() as f64;
                    let df = words.values().filter(|ws| ws.iter().any(|x| x == w)).count() as f64;
                    tf * (n / df).ln()
                })
                .collect();
            let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            let v = tfidf_vectorize(doc, &sp, &idf);
            for (j, r) in raw.iter().enumerate() {
                let expected = if norm > 0.0 { r / norm } else { 0.0 };
                assert!((v.get(j) - expected).abs() < 1e-12, "seed {seed} token {}", tokens[j]);
            }
        }
    }
}
