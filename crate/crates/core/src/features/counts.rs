use std::collections::HashMap;

use crate::corpus::text::{extract_hashtags, topic_terms, word_terms};
use crate::corpus::{LabeledCorpus, UserDocument};
use crate::discovery::{FeatureKind, FeatureSpace, Provenance};

use super::vector::FeatureVector;

/// Terms of one tweet text as seen by a feature family: raw hashtags for
/// hashtag spaces, stripped words for bag-of-words and tf-idf, words plus
/// hashtags for topic spaces.
pub fn text_terms(text: &str, kind: FeatureKind) -> Vec<String> {
    match kind {
        FeatureKind::Hashtag => extract_hashtags(text),
        FeatureKind::Bow | FeatureKind::Tfidf => word_terms(text),
        FeatureKind::Lda => topic_terms(text),
    }
}

/// All terms of a user's document for a feature family.
pub fn document_terms(doc: &UserDocument, kind: FeatureKind) -> Vec<String> {
    doc.texts().flat_map(|t| text_terms(t, kind)).collect()
}

/// Counts occurrences of space tokens among `terms`.
pub fn count_terms<S: AsRef<str>>(terms: &[S], space: &FeatureSpace) -> FeatureVector {
    let mut counts: HashMap<usize, f64> = HashMap::new();
    for t in terms {
        if let Some(i) = space.position(t.as_ref()) {
            *counts.entry(i).or_insert(0.0) += 1.0;
        }
    }
    FeatureVector::from_entries(space.len(), counts).expect("positions lie inside the space")
}

/// Occurrence count of each space token across the document.
pub fn count_vectorize(doc: &UserDocument, space: &FeatureSpace) -> FeatureVector {
    count_terms(&document_terms(doc, space.kind()), space)
}

/// Word counts over the whole corpus, sorted by count descending then token.
pub fn term_frequencies(corpus: &LabeledCorpus) -> Vec<(String, u64)> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for tweet in corpus.tweets() {
        for term in word_terms(&tweet.text) {
            *counts.entry(term).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked
}

/// Space of the `k` most frequent words of an already ranked frequency list.
pub fn top_frequent_space(ranked: &[(String, u64)], k: usize) -> FeatureSpace {
    let entries = ranked.iter().take(k).map(|(t, c)| (t.clone(), Provenance::Frequency { count: *c }));
    FeatureSpace::new(FeatureKind::Tfidf, k, entries)
}

/// The `k` most frequent hashtag-free words in the corpus.
pub fn select_top_frequent_terms(corpus: &LabeledCorpus, k: usize) -> FeatureSpace {
    top_frequent_space(&term_frequencies(corpus), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ClassLabel, Tweet};
    use chrono::{TimeZone, Utc};

    pub(crate) fn corpus(docs: &[&str]) -> LabeledCorpus {
        let ts = Utc.with_ymd_and_hms(2017, 4, 1, 0, 0, 0).unwrap();
        let documents = docs
            .iter()
            .enumerate()
            .map(|(i, text)| {
                let user = format!("u{i}");
                UserDocument::new(user.clone(), vec![Tweet::new(format!("t{i}"), user, ts, *text)], ClassLabel::Yes)
                    .unwrap()
            })
            .collect();
        LabeledCorpus::new(documents).unwrap()
    }

    #[test]
    fn counts_hashtags() {
        let c = corpus(&["#EVET #EVET vatan"]);
        let space = FeatureSpace::new(FeatureKind::Hashtag, 1, [("#EVET".to_string(), Provenance::Frequency { count: 0 })]);
        let v = count_vectorize(&c.documents()[0], &space);
        assert_eq!(v.entries(), &[(0, 2.0)]);
        let other = FeatureSpace::new(FeatureKind::Hashtag, 1, [("#HAYIR".to_string(), Provenance::Frequency { count: 0 })]);
        let z = count_vectorize(&c.documents()[0], &other);
        assert_eq!(z.nnz(), 0);
        assert_eq!(z.dimension(), 1);
    }

    #[test]
    fn bow_counts_ignore_hashtags() {
        let c = corpus(&["evet evet #evet @evet"]);
        let space = FeatureSpace::new(FeatureKind::Bow, 1, [("evet".to_string(), Provenance::Frequency { count: 0 })]);
        assert_eq!(count_vectorize(&c.documents()[0], &space).entries(), &[(0, 2.0)]);
    }

    #[test]
    fn top_frequent_terms() {
        let c = corpus(&["a a b", "b c"]);
        // single letters are dropped by the tokenizer, so use two-letter words
        let c2 = corpus(&["aa aa bb", "bb cc"]);
        assert!(select_top_frequent_terms(&c, 2).is_empty());
        let s = select_top_frequent_terms(&c2, 2);
        assert_eq!(s.tokens(), ["aa", "bb"]);
        assert_eq!(select_top_frequent_terms(&c2, 10).len(), 3);
    }
}
