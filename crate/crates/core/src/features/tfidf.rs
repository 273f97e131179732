use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::counts::{count_terms, document_terms};
use super::vector::FeatureVector;
use crate::corpus::{LabeledCorpus, UserDocument};
use crate::discovery::FeatureSpace;
use crate::error::{Error, Result};

/// Document frequencies and `ln(n_docs / df)` weights of a space's tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfTable {
    n_docs: usize,
    df: HashMap<String, usize>,
    idf: HashMap<String, f64>,
}

impl IdfTable {
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn df(&self, token: &str) -> Option<usize> {
        self.df.get(token).copied()
    }

    pub fn idf(&self, token: &str) -> Option<f64> {
        self.idf.get(token).copied()
    }
}

/// Counts, per space token, the user documents containing it.
pub fn compute_idf(corpus: &LabeledCorpus, space: &FeatureSpace) -> Result<IdfTable> {
    let terms: Vec<Vec<String>> = corpus.documents().iter().map(|d| document_terms(d, space.kind())).collect();
    idf_from_term_lists(terms.iter().map(Vec::as_slice), space)
}

/// [`compute_idf`] over documents already split into terms.
pub fn idf_from_term_lists<'a, I>(documents: I, space: &FeatureSpace) -> Result<IdfTable>
where
    I: IntoIterator<Item = &'a [String]>,
{
    let mut df: HashMap<String, usize> = HashMap::new();
    let mut n_docs = 0;
    for terms in documents {
        n_docs += 1;
        let mut present: Vec<usize> = terms.iter().filter_map(|t| space.position(t)).collect();
        present.sort_unstable();
        present.dedup();
        for i in present {
            *df.entry(space.tokens()[i].clone()).or_insert(0) += 1;
        }
    }
    if let Some(missing) = space.tokens().iter().find(|t| !df.contains_key(*t)) {
        return Err(Error::TokenAbsentFromCorpus(missing.clone()));
    }
    let idf = df.iter().map(|(t, &d)| (t.clone(), (n_docs as f64 / d as f64).ln())).collect();
    Ok(IdfTable { n_docs, df, idf })
}

/// Term count times idf, scaled to unit length unless all zero.
pub fn tfidf_vectorize(doc: &UserDocument, space: &FeatureSpace, idf: &IdfTable) -> FeatureVector {
    tfidf_from_terms(&document_terms(doc, space.kind()), space, idf)
}

pub fn tfidf_from_terms<S: AsRef<str>>(terms: &[S], space: &FeatureSpace, idf: &IdfTable) -> FeatureVector {
    let counts = count_terms(terms, space);
    let weighted = counts
        .entries()
        .iter()
        .map(|&(i, c)| (i, c * idf.idf(&space.tokens()[i]).unwrap_or(0.0)));
    let mut v = FeatureVector::from_entries(space.len(), weighted).expect("same dimension");
    let norm = v.squared_norm().sqrt();
    if norm > 0.0 {
        v.scale(1.0 / norm);
    }
    v
}
