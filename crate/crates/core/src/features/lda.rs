//! Latent Dirichlet allocation by collapsed Gibbs sampling, used to pick
//! topic-representative terms.

use std::collections::HashMap;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::counts::document_terms;
use crate::corpus::LabeledCorpus;
use crate::discovery::{FeatureKind, FeatureSpace, Provenance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    pub n_topics: usize,
    /// Full sweeps over every sampled token.
    pub iterations: usize,
    pub dict_size: usize,
    pub sample_size: usize,
    pub alpha: f64,
    pub beta: f64,
    pub rng_seed: u64,
}

impl LdaConfig {
    /// Defaults for `n_topics` topics: 400 sweeps, 100k-term dictionary,
    /// 100k-document sample, `alpha = 50 / T`, `beta = 0.01`.
    pub fn with_topics(n_topics: usize) -> Self {
        LdaConfig {
            n_topics,
            iterations: 400,
            dict_size: 100_000,
            sample_size: 100_000,
            alpha: 50.0 / n_topics.max(1) as f64,
            beta: 0.01,
            rng_seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_topics < 2 || self.n_topics > usize::from(u16::MAX) {
            return Err(Error::InvalidConfig(format!("n_topics must be in [2, 65535], got {}", self.n_topics)));
        }
        if self.iterations == 0 || self.dict_size == 0 || self.sample_size == 0 {
            return Err(Error::InvalidConfig("iterations, dict_size and sample_size must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.beta > 0.0) {
            return Err(Error::InvalidConfig("alpha and beta must be positive".into()));
        }
        Ok(())
    }
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig::with_topics(10)
    }
}

/// Topic-word distributions over a dictionary; what gets saved to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicTerms {
    pub n_topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub rng_seed: u64,
    pub dictionary: Vec<String>,
    pub topic_word: Vec<Vec<f64>>,
}

impl TopicTerms {
    /// The `k` most probable terms of `topic` with their probabilities,
    /// ties broken by term.
    pub fn top_terms(&self, topic: usize, k: usize) -> Vec<(&str, f64)> {
        let row = &self.topic_word[topic];
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then_with(|| self.dictionary[a].cmp(&self.dictionary[b])));
        order.truncate(k);
        order.into_iter().map(|w| (self.dictionary[w].as_str(), row[w])).collect()
    }
}

/// A trained model with the sampler state it ended in.
#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel {
    pub topics: TopicTerms,
    /// User ids of the training documents, in sampling order.
    pub doc_ids: Vec<String>,
    pub doc_topic: Vec<Vec<f64>>,
    pub assignments: Vec<Vec<u16>>,
    /// Indexed `[word * n_topics + topic]`.
    pub topic_word_counts: Vec<u32>,
    /// Indexed `[doc * n_topics + topic]`.
    pub doc_topic_counts: Vec<u32>,
    pub topic_counts: Vec<u32>,
}

/// Collapsed Gibbs sampler over dictionary-restricted documents.
#[derive(Debug, Clone)]
pub struct GibbsSampler {
    cfg: LdaConfig,
    dictionary: Vec<String>,
    doc_ids: Vec<String>,
    docs: Vec<Vec<u32>>,
    z: Vec<Vec<u16>>,
    nwt: Vec<u32>,
    ndt: Vec<u32>,
    nt: Vec<u32>,
    rng: ChaCha8Rng,
    sweeps: usize,
    probs: Vec<f64>,
}

impl GibbsSampler {
    /// Samples `min(sample_size, |corpus|)` documents, builds the dictionary
    /// from their words and hashtags and draws random initial topics.
    pub fn new(corpus: &LabeledCorpus, cfg: &LdaConfig) -> Result<Self> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let mut picked: Vec<usize> = (0..corpus.len()).collect();
        picked.shuffle(&mut rng);
        picked.truncate(cfg.sample_size.min(corpus.len()));
        picked.sort_unstable();
        let docs = picked
            .iter()
            .map(|&i| {
                let d = &corpus.documents()[i];
                (d.user_id().to_string(), document_terms(d, FeatureKind::Lda))
            })
            .collect();
        Self::from_term_documents(docs, cfg, rng)
    }

    /// Sampler over pre-tokenized `(id, terms)` documents.
    pub fn from_terms(docs: Vec<(String, Vec<String>)>, cfg: &LdaConfig) -> Result<Self> {
        cfg.validate()?;
        Self::from_term_documents(docs, cfg, ChaCha8Rng::seed_from_u64(cfg.rng_seed))
    }

    fn from_term_documents(docs: Vec<(String, Vec<String>)>, cfg: &LdaConfig, mut rng: ChaCha8Rng) -> Result<Self> {
        let mut freq: HashMap<&str, u64> = HashMap::new();
        for (_, terms) in &docs {
            for t in terms {
                *freq.entry(t.as_str()).or_insert(0) += 1;
            }
        }
        let mut ranked: Vec<(&str, u64)> = freq.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        ranked.truncate(cfg.dict_size);
        if ranked.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let dictionary: Vec<String> = ranked.iter().map(|(t, _)| t.to_string()).collect();
        let ids: HashMap<&str, u32> = dictionary.iter().enumerate().map(|(i, t)| (t.as_str(), i as u32)).collect();

        let t_count = cfg.n_topics;
        let v = dictionary.len();
        let mut doc_ids = Vec::with_capacity(docs.len());
        let mut word_docs = Vec::with_capacity(docs.len());
        for (id, terms) in &docs {
            doc_ids.push(id.clone());
            word_docs.push(terms.iter().filter_map(|t| ids.get(t.as_str()).copied()).collect::<Vec<u32>>());
        }
        let mut nwt = vec![0u32; v * t_count];
        let mut ndt = vec![0u32; word_docs.len() * t_count];
        let mut nt = vec![0u32; t_count];
        let mut z = Vec::with_capacity(word_docs.len());
        for (d, words) in word_docs.iter().enumerate() {
            let zd: Vec<u16> = words
                .iter()
                .map(|&w| {
                    let t = rng.gen_range(0..t_count);
                    nwt[w as usize * t_count + t] += 1;
                    ndt[d * t_count + t] += 1;
                    nt[t] += 1;
                    t as u16
                })
                .collect();
            z.push(zd);
        }
        Ok(GibbsSampler {
            cfg: cfg.clone(),
            dictionary,
            doc_ids,
            docs: word_docs,
            z,
            nwt,
            ndt,
            nt,
            rng,
            sweeps: 0,
            probs: vec![0.0; t_count],
        })
    }

    pub fn dictionary(&self) -> &[String] {
        &self.dictionary
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn total_tokens(&self) -> usize {
        self.docs.iter().map(Vec::len).sum()
    }

    /// Resamples the topic of every token once.
    pub fn sweep(&mut self) {
        let t_count = self.cfg.n_topics;
        let (alpha, beta) = (self.cfg.alpha, self.cfg.beta);
        let v_beta = self.dictionary.len() as f64 * beta;
        for (d, words) in self.docs.iter().enumerate() {
            let doc_counts = &mut self.ndt[d * t_count..(d + 1) * t_count];
            for (i, &w) in words.iter().enumerate() {
                let old = self.z[d][i] as usize;
                let word_counts = &mut self.nwt[w as usize * t_count..(w as usize + 1) * t_count];
                word_counts[old] -= 1;
                doc_counts[old] -= 1;
                self.nt[old] -= 1;

                let mut total = 0.0;
                for t in 0..t_count {
                    total += (f64::from(doc_counts[t]) + alpha) * (f64::from(word_counts[t]) + beta)
                        / (f64::from(self.nt[t]) + v_beta);
                    self.probs[t] = total;
                }
                let u = self.rng.gen::<f64>() * total;
                let new = self.probs.iter().position(|&c| u < c).unwrap_or(t_count - 1);

                word_counts[new] += 1;
                doc_counts[new] += 1;
                self.nt[new] += 1;
                self.z[d][i] = new as u16;
            }
        }
        self.sweeps += 1;
    }

    /// Recounts every counter from the assignments and compares.
    pub fn check_counters(&self) -> std::result::Result<(), String> {
        let t_count = self.cfg.n_topics;
        let mut nwt = vec![0u32; self.nwt.len()];
        let mut ndt = vec![0u32; self.ndt.len()];
        let mut nt = vec![0u32; t_count];
        for (d, (words, zs)) in self.docs.iter().zip(&self.z).enumerate() {
            if words.len() != zs.len() {
                return Err(format!("document {d} has {} tokens but {} assignments", words.len(), zs.len()));
            }
            for (&w, &t) in words.iter().zip(zs) {
                let t = t as usize;
                if t >= t_count {
                    return Err(format!("topic id {t} out of range"));
                }
                nwt[w as usize * t_count + t] += 1;
                ndt[d * t_count + t] += 1;
                nt[t] += 1;
            }
        }
        if nwt != self.nwt {
            return Err("topic-word counts drifted".into());
        }
        if ndt != self.ndt {
            return Err("doc-topic counts drifted".into());
        }
        if nt != self.nt {
            return Err("topic totals drifted".into());
        }
        let total: u64 = self.nt.iter().map(|&c| u64::from(c)).sum();
        if total != self.total_tokens() as u64 {
            return Err(format!("topic totals sum to {total}, expected {}", self.total_tokens()));
        }
        Ok(())
    }

    pub fn into_model(self) -> LdaModel {
        let t_count = self.cfg.n_topics;
        let v = self.dictionary.len();
        let (alpha, beta) = (self.cfg.alpha, self.cfg.beta);
        let topic_word = (0..t_count)
            .map(|t| {
                let denom = f64::from(self.nt[t]) + v as f64 * beta;
                (0..v).map(|w| (f64::from(self.nwt[w * t_count + t]) + beta) / denom).collect()
            })
            .collect();
        let doc_topic = self
            .docs
            .iter()
            .enumerate()
            .map(|(d, words)| {
                let denom = words.len() as f64 + t_count as f64 * alpha;
                (0..t_count).map(|t| (f64::from(self.ndt[d * t_count + t]) + alpha) / denom).collect()
            })
            .collect();
        LdaModel {
            topics: TopicTerms {
                n_topics: t_count,
                alpha,
                beta,
                iterations: self.sweeps,
                rng_seed: self.cfg.rng_seed,
                dictionary: self.dictionary,
                topic_word,
            },
            doc_ids: self.doc_ids,
            doc_topic,
            assignments: self.z,
            topic_word_counts: self.nwt,
            doc_topic_counts: self.ndt,
            topic_counts: self.nt,
        }
    }
}

/// Trains a topic model on a seeded sample of the corpus.
pub fn lda_train(corpus: &LabeledCorpus, cfg: &LdaConfig) -> Result<LdaModel> {
    let mut sampler = GibbsSampler::new(corpus, cfg)?;
    for _ in 0..cfg.iterations {
        sampler.sweep();
    }
    Ok(sampler.into_model())
}

/// Union of every topic's `k` most probable terms; each term keeps the
/// first topic that contributed it.
pub fn lda_feature_space(topics: &TopicTerms, k: usize) -> FeatureSpace {
    let entries = (0..topics.n_topics).flat_map(|t| {
        topics
            .top_terms(t, k)
            .into_iter()
            .map(move |(term, p)| (term.to_string(), Provenance::Topic { topic: t, weight: p }))
    });
    FeatureSpace::new(FeatureKind::Lda, k, entries)
}

const FORMAT: &str = "stancekit-lda";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TopicFile {
    format: String,
    version: u32,
    #[serde(flatten)]
    topics: TopicTerms,
}

pub fn write_topic_terms<W: Write>(w: W, topics: &TopicTerms) -> Result<()> {
    let file = TopicFile { format: FORMAT.into(), version: VERSION, topics: topics.clone() };
    serde_json::to_writer(w, &file).map_err(|e| Error::ModelFormat(e.to_string()))
}

pub fn read_topic_terms<R: Read>(r: R) -> Result<TopicTerms> {
    let file: TopicFile = serde_json::from_reader(r).map_err(|e| Error::ModelFormat(e.to_string()))?;
    if file.format != FORMAT || file.version != VERSION {
        return Err(Error::ModelFormat(format!("unsupported model {} v{}", file.format, file.version)));
    }
    let t = &file.topics;
    if t.topic_word.len() != t.n_topics || t.topic_word.iter().any(|row| row.len() != t.dictionary.len()) {
        return Err(Error::ModelFormat("topic_word shape does not match dictionary".into()));
    }
    Ok(file.topics)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs() -> Vec<(String, Vec<String>)> {
        let a = ["elma", "armut", "kiraz"];
        let b = ["top", "gol", "mac"];
        (0..20)
            .map(|i| {
                let vocab = if i % 2 == 0 { &a } else { &b };
                let terms = (0..30).map(|j| vocab[(i + j) % 3].to_string()).collect();
                (format!("d{i}"), terms)
            })
            .collect()
    }

    fn cfg() -> LdaConfig {
        LdaConfig { iterations: 30, rng_seed: 5, ..LdaConfig::with_topics(2) }
    }

    #[test]
    fn counters_stay_consistent() {
        let mut s = GibbsSampler::from_terms(docs(), &cfg()).unwrap();
        s.check_counters().unwrap();
        for _ in 0..10 {
            s.sweep();
            s.check_counters().unwrap();
        }
        let m = s.into_model();
        let total: u32 = m.topic_word_counts.iter().sum();
        assert_eq!(total, 600);
        assert_eq!(m.doc_topic_counts.iter().sum::<u32>(), 600);
        for row in m.topics.topic_word.iter().chain(&m.doc_topic) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(GibbsSampler::from_terms(vec![("d".into(), vec![])], &cfg()), Err(Error::EmptyDictionary)));
        let one_topic = LdaConfig { n_topics: 1, ..cfg() };
        assert!(matches!(GibbsSampler::from_terms(docs(), &one_topic), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn dictionary_is_truncated_by_frequency() {
        let d = vec![("d".to_string(), vec!["aa".into(), "bb".into(), "bb".into(), "cc".into()])];
        let s = GibbsSampler::from_terms(d, &LdaConfig { dict_size: 2, ..cfg() }).unwrap();
        assert_eq!(s.dictionary(), ["bb", "aa"]);
        assert_eq!(s.total_tokens(), 3);
    }

    #[test]
    fn feature_space_dedups_and_bounds() {
        let topics = TopicTerms {
            n_topics: 3,
            alpha: 1.0,
            beta: 0.1,
            iterations: 1,
            rng_seed: 0,
            dictionary: vec!["aa".into(), "bb".into(), "cc".into(), "dd".into()],
            topic_word: vec![vec![0.7, 0.1, 0.1, 0.1], vec![0.6, 0.0, 0.4, 0.0], vec![0.5, 0.5, 0.0, 0.0]],
        };
        let s = lda_feature_space(&topics, 2);
        assert_eq!(s.tokens(), ["aa", "bb", "cc"]);
        assert_eq!(s.provenance()[2], Provenance::Topic { topic: 1, weight: 0.4 });
        assert!(lda_feature_space(&topics, 1).len() <= 3);
    }

    #[test]
    fn deterministic_and_file_round_trip() {
        let a = GibbsSampler::from_terms(docs(), &cfg()).unwrap();
        let b = a.clone();
        let run = |mut s: GibbsSampler| {
            for _ in 0..5 {
                s.sweep();
            }
            s.into_model()
        };
        let (ma, mb) = (run(a), run(b));
        assert_eq!(ma, mb);
        let mut buf = Vec::new();
        write_topic_terms(&mut buf, &ma.topics).unwrap();
        let back = read_topic_terms(buf.as_slice()).unwrap();
        assert_eq!(back, ma.topics);
        let mut again = Vec::new();
        write_topic_terms(&mut again, &back).unwrap();
        assert_eq!(buf, again);
    }
}
