//! Synthetic tweet corpora with planted stance structure.
//!
//! Yes/No users write with their side's vocabulary and hashtags plus a
//! shared vocabulary; ambiguous users post spam topics and sprinkle seed
//! hashtags of both sides. Optional label-independent noise words pad the
//! candidate vocabulary.

use std::collections::BTreeMap;

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::{ClassLabel, Tweet};
use crate::discovery::SeedSets;
use crate::error::{Error, Result};

/// Generator parameters. Rates are per-tweet probabilities unless noted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_users: usize,
    /// Fractions of Yes, No and Ambiguous users.
    pub class_proportions: [f64; 3],
    /// Inclusive range of tweets per user.
    pub tweets_per_user: (usize, usize),
    /// Inclusive range of words per tweet.
    pub words_per_tweet: (usize, usize),
    /// Size of each side's vocabulary and of each spam topic's vocabulary.
    pub vocab_per_class: usize,
    pub shared_vocab: usize,
    /// Share of words drawn from the user's class or spam-topic vocabulary.
    pub class_word_rate: f64,
    /// Planted discriminative hashtags per side and per spam topic.
    pub hashtags_per_class: usize,
    pub hashtag_rate: f64,
    /// Probability a tweet carries a seed hashtag of its own side.
    pub seed_rate: f64,
    /// Probability a tweet also carries a seed hashtag of the opposing side.
    pub injection_rate: f64,
    pub spam_topics: usize,
    /// Label-independent words used by everyone.
    pub noise_vocab: usize,
    pub noise_word_rate: f64,
    /// When nonzero, each user draws noise words only from a private subset
    /// of this size, so noise tokens behave like per-user idiosyncrasies.
    pub noise_words_per_user: usize,
    pub retweet_rate: f64,
    pub rng_seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_users: 2000,
            class_proportions: [0.413, 0.391, 0.196],
            tweets_per_user: (10, 30),
            words_per_tweet: (5, 12),
            vocab_per_class: 200,
            shared_vocab: 1000,
            class_word_rate: 0.3,
            hashtags_per_class: 20,
            hashtag_rate: 0.4,
            seed_rate: 0.7,
            injection_rate: 0.2,
            spam_topics: 3,
            noise_vocab: 0,
            noise_word_rate: 0.0,
            noise_words_per_user: 0,
            retweet_rate: 0.5,
            rng_seed: 42,
        }
    }
}

fn check_rate(name: &str, r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidConfig(format!("{name} must lie in [0,1], got {r}")));
    }
    Ok(())
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.class_proportions.iter().sum();
        if (sum - 1.0).abs() > 1e-9 || self.class_proportions.iter().any(|&p| p < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "class proportions must be non-negative and sum to 1, got {:?}",
                self.class_proportions
            )));
        }
        for (name, r) in [
            ("injection_rate", self.injection_rate),
            ("class_word_rate", self.class_word_rate),
            ("hashtag_rate", self.hashtag_rate),
            ("seed_rate", self.seed_rate),
            ("noise_word_rate", self.noise_word_rate),
            ("retweet_rate", self.retweet_rate),
        ] {
            check_rate(name, r)?;
        }
        if self.class_word_rate + self.noise_word_rate > 1.0 {
            return Err(Error::InvalidConfig("class_word_rate + noise_word_rate exceeds 1".into()));
        }
        let (t0, t1) = self.tweets_per_user;
        let (w0, w1) = self.words_per_tweet;
        if t0 == 0 || t0 > t1 || w0 == 0 || w0 > w1 {
            return Err(Error::InvalidConfig("per-user and per-tweet ranges must be nonempty and start at 1 or more".into()));
        }
        if self.vocab_per_class == 0 || self.shared_vocab == 0 {
            return Err(Error::InvalidConfig("vocabularies must be nonempty".into()));
        }
        if self.noise_word_rate > 0.0 && self.noise_vocab == 0 {
            return Err(Error::InvalidConfig("noise_word_rate > 0 needs a noise vocabulary".into()));
        }
        if self.spam_topics > 26 {
            return Err(Error::InvalidConfig("at most 26 spam topics".into()));
        }
        Ok(())
    }

    /// Users per class by largest-remainder rounding of `proportions * n_users`;
    /// remainder ties go to the earlier class.
    pub fn class_counts(&self) -> [usize; 3] {
        let quotas: Vec<f64> = self.class_proportions.iter().map(|p| p * self.n_users as f64).collect();
        let mut counts: [usize; 3] = std::array::from_fn(|i| quotas[i].floor() as usize);
        let assigned: usize = counts.iter().sum();
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&a, &b| {
            let (ra, rb) = (quotas[a] - quotas[a].floor(), quotas[b] - quotas[b].floor());
            rb.total_cmp(&ra).then(a.cmp(&b))
        });
        for &i in order.iter().take(self.n_users.saturating_sub(assigned)) {
            counts[i] += 1;
        }
        counts
    }
}

/// The vocabulary the generator planted, for recovery checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PlantedVocabulary {
    pub yes_words: Vec<String>,
    pub no_words: Vec<String>,
    pub yes_hashtags: Vec<String>,
    pub no_hashtags: Vec<String>,
    pub spam_words: Vec<Vec<String>>,
    pub spam_hashtags: Vec<Vec<String>>,
    pub shared_words: Vec<String>,
    pub noise_words: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    /// Sorted by `(timestamp, id)`.
    pub tweets: Vec<Tweet>,
    pub labels: BTreeMap<String, ClassLabel>,
    pub planted: PlantedVocabulary,
}

const SYLLABLES: [&str; 10] = ["ka", "le", "mi", "no", "ru", "sa", "te", "vi", "zo", "bu"];

/// Letters-only pseudo-word: a three-letter prefix followed by one syllable
/// per decimal digit of `i`. Distinct prefixes give disjoint vocabularies.
fn pseudo_word(prefix: &str, i: usize) -> String {
    let mut w = String::from(prefix);
    for d in i.to_string().bytes() {
        w.push_str(SYLLABLES[(d - b'0') as usize]);
    }
    w
}

fn vocab(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| pseudo_word(prefix, i)).collect()
}

fn tags(stem: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("#{stem}{i}")).collect()
}

impl PlantedVocabulary {
    fn new(cfg: &SynthConfig) -> Self {
        let topic_letter = |t: usize| (b'a' + t as u8) as char;
        PlantedVocabulary {
            yes_words: vocab("evt", cfg.vocab_per_class),
            no_words: vocab("hyr", cfg.vocab_per_class),
            yes_hashtags: tags("EvetIcin", cfg.hashtags_per_class),
            no_hashtags: tags("HayirDiyoruz", cfg.hashtags_per_class),
            spam_words: (0..cfg.spam_topics)
                .map(|t| vocab(&format!("sp{}", topic_letter(t)), cfg.vocab_per_class))
                .collect(),
            spam_hashtags: (0..cfg.spam_topics)
                .map(|t| tags(&format!("Firsat{}x", topic_letter(t).to_ascii_uppercase()), cfg.hashtags_per_class))
                .collect(),
            shared_words: vocab("ort", cfg.shared_vocab),
            noise_words: vocab("gur", cfg.noise_vocab),
        }
    }
}

/// Seed variant with weights `n, n-1, …, 1` in list order.
fn pick_seed<'a, R: Rng>(rng: &mut R, seeds: &'a [String]) -> &'a str {
    let n = seeds.len();
    let total = n * (n + 1) / 2;
    let mut r = rng.gen_range(0..total);
    for (j, s) in seeds.iter().enumerate() {
        let w = n - j;
        if r < w {
            return s;
        }
        r -= w;
    }
    unreachable!("weights cover the range")
}

fn pick<'a, R: Rng>(rng: &mut R, items: &'a [String]) -> &'a str {
    &items[rng.gen_range(0..items.len())]
}

struct UserStyle<'a> {
    class_words: &'a [String],
    class_tags: &'a [String],
    noise_words: Vec<&'a str>,
    label: ClassLabel,
}

/// Generates a tweet stream and labels with planted structure. Output is a
/// pure function of `cfg`.
pub fn generate_synthetic_corpus(cfg: &SynthConfig) -> Result<SyntheticCorpus> {
    cfg.validate()?;
    let planted = PlantedVocabulary::new(cfg);
    let seeds = SeedSets::default();
    let seeds_yes: Vec<String> = seeds.yes_ordered().to_vec();
    let seeds_no: Vec<String> = seeds.no_ordered().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);

    let counts = cfg.class_counts();
    let mut user_labels: Vec<ClassLabel> = ClassLabel::ALL
        .iter()
        .flat_map(|&l| std::iter::repeat_n(l, counts[l.index()]))
        .collect();
    user_labels.shuffle(&mut rng);

    let start: DateTime<Utc> = Utc.with_ymd_and_hms(2017, 4, 1, 0, 0, 0).unwrap();
    let window_secs = 16 * 24 * 3600;
    let empty: Vec<String> = Vec::new();

    let mut labels = BTreeMap::new();
    let mut drafts: Vec<(DateTime<Utc>, String, String, bool)> = Vec::new();
    for (u, &label) in user_labels.iter().enumerate() {
        let user_id = format!("u{u:05}");
        labels.insert(user_id.clone(), label);
        let style = match label {
            ClassLabel::Yes => UserStyle { class_words: &planted.yes_words, class_tags: &planted.yes_hashtags, noise_words: Vec::new(), label },
            ClassLabel::No => UserStyle { class_words: &planted.no_words, class_tags: &planted.no_hashtags, noise_words: Vec::new(), label },
            ClassLabel::Ambiguous if cfg.spam_topics > 0 => {
                let t = rng.gen_range(0..cfg.spam_topics);
                UserStyle {
                    class_words: &planted.spam_words[t],
                    class_tags: &planted.spam_hashtags[t],
                    noise_words: Vec::new(),
                    label,
                }
            }
            ClassLabel::Ambiguous => UserStyle { class_words: &empty, class_tags: &empty, noise_words: Vec::new(), label },
        };
        let mut style = style;
        if cfg.noise_words_per_user > 0 && !planted.noise_words.is_empty() {
            let m = cfg.noise_words_per_user.min(planted.noise_words.len());
            style.noise_words = rand::seq::index::sample(&mut rng, planted.noise_words.len(), m)
                .into_iter()
                .map(|i| planted.noise_words[i].as_str())
                .collect();
        }
        let n_tweets = rng.gen_range(cfg.tweets_per_user.0..=cfg.tweets_per_user.1);
        for _ in 0..n_tweets {
            let text = compose_tweet(&mut rng, cfg, &planted, &style, &seeds_yes, &seeds_no);
            let ts = start + Duration::seconds(rng.gen_range(0..window_secs));
            let is_retweet = rng.gen_bool(cfg.retweet_rate);
            drafts.push((ts, user_id.clone(), text, is_retweet));
        }
    }

    let n = drafts.len();
    let mut tweets: Vec<Tweet> = Vec::with_capacity(n);
    for (i, (ts, user, text, is_retweet)) in drafts.into_iter().enumerate() {
        let id = format!("t{i:08}");
        if is_retweet {
            let original = format!("t{:08}", rng.gen_range(0..n));
            let source = format!("u{:05}", rng.gen_range(0..cfg.n_users.max(1)));
            tweets.push(Tweet::new(id, user, ts, format!("RT @{source}: {text}")).retweet_of(original));
        } else {
            tweets.push(Tweet::new(id, user, ts, text));
        }
    }
    tweets.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
    Ok(SyntheticCorpus { tweets, labels, planted })
}

fn compose_tweet<R: Rng>(
    rng: &mut R,
    cfg: &SynthConfig,
    planted: &PlantedVocabulary,
    style: &UserStyle<'_>,
    seeds_yes: &[String],
    seeds_no: &[String],
) -> String {
    let mut tokens: Vec<String> = Vec::new();
    let n_words = rng.gen_range(cfg.words_per_tweet.0..=cfg.words_per_tweet.1);
    for _ in 0..n_words {
        let r: f64 = rng.gen();
        let word = if r < cfg.class_word_rate && !style.class_words.is_empty() {
            pick(rng, style.class_words)
        } else if r < cfg.class_word_rate + cfg.noise_word_rate && !style.noise_words.is_empty() {
            style.noise_words[rng.gen_range(0..style.noise_words.len())]
        } else if r < cfg.class_word_rate + cfg.noise_word_rate && !planted.noise_words.is_empty() {
            pick(rng, &planted.noise_words)
        } else {
            pick(rng, &planted.shared_words)
        };
        tokens.push(word.to_string());
    }

    match style.label {
        ClassLabel::Yes | ClassLabel::No => {
            let (own, other) = if style.label == ClassLabel::Yes { (seeds_yes, seeds_no) } else { (seeds_no, seeds_yes) };
            if rng.gen_bool(cfg.seed_rate) {
                tokens.push(pick_seed(rng, own).to_string());
            }
            if rng.gen_bool(cfg.injection_rate) {
                tokens.push(pick_seed(rng, other).to_string());
            }
        }
        ClassLabel::Ambiguous => {
            if rng.gen_bool(cfg.seed_rate) {
                let (first, second) = if rng.gen_bool(0.5) { (seeds_yes, seeds_no) } else { (seeds_no, seeds_yes) };
                tokens.push(pick_seed(rng, first).to_string());
                if rng.gen_bool(cfg.injection_rate) {
                    tokens.push(pick_seed(rng, second).to_string());
                }
            }
        }
    }
    if !style.class_tags.is_empty() && rng.gen_bool(cfg.hashtag_rate) {
        tokens.push(pick(rng, style.class_tags).to_string());
    }
    if rng.gen_bool(0.15) {
        tokens.push(format!("@u{:05}", rng.gen_range(0..cfg.n_users.max(1))));
    }
    if rng.gen_bool(0.1) {
        tokens.push(format!("https://t.co/{:08x}", rng.gen::<u32>()));
    }
    tokens.shuffle(rng);
    tokens.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::text::extract_hashtags;

    fn small(seed: u64) -> SynthConfig {
        SynthConfig { n_users: 60, tweets_per_user: (3, 6), rng_seed: seed, ..SynthConfig::default() }
    }

    #[test]
    fn default_shape_class_counts() {
        assert_eq!(SynthConfig::default().class_counts(), [826, 782, 392]);
        let c = SynthConfig { n_users: 10, class_proportions: [1.0 / 3.0; 3], ..SynthConfig::default() };
        assert_eq!(c.class_counts(), [4, 3, 3]);
    }

    #[test]
    fn labels_follow_class_counts() {
        let cfg = small(3);
        let out = generate_synthetic_corpus(&cfg).unwrap();
        let mut counts = [0; 3];
        for l in out.labels.values() {
            counts[l.index()] += 1;
        }
        assert_eq!(counts, cfg.class_counts());
    }

    #[test]
    fn no_injection_means_no_cross_seeds() {
        let cfg = SynthConfig { injection_rate: 0.0, ..small(5) };
        let out = generate_synthetic_corpus(&cfg).unwrap();
        let seeds = SeedSets::default();
        for t in &out.tweets {
            if out.labels[&t.user_id] == ClassLabel::Yes {
                assert!(extract_hashtags(&t.text).iter().all(|h| !seeds.no().contains(h)), "{}", t.text);
            }
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = generate_synthetic_corpus(&small(11)).unwrap();
        let b = generate_synthetic_corpus(&small(11)).unwrap();
        let c = generate_synthetic_corpus(&small(12)).unwrap();
        assert_eq!(a.tweets, b.tweets);
        assert_eq!(a.labels, b.labels);
        assert_ne!(a.tweets, c.tweets);
    }

    #[test]
    fn rejects_bad_config() {
        let bad = SynthConfig { class_proportions: [0.5, 0.5, 0.5], ..SynthConfig::default() };
        assert!(matches!(generate_synthetic_corpus(&bad), Err(Error::InvalidConfig(_))));
        let bad = SynthConfig { injection_rate: 1.5, ..SynthConfig::default() };
        assert!(matches!(generate_synthetic_corpus(&bad), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn pseudo_words_are_disjoint_and_tokenize_cleanly() {
        let p = PlantedVocabulary::new(&SynthConfig { noise_vocab: 50, ..SynthConfig::default() });
        let mut all: Vec<&String> = p.yes_words.iter().chain(&p.no_words).chain(&p.shared_words).chain(&p.noise_words).collect();
        all.extend(p.spam_words.iter().flatten());
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
        for w in all {
            assert_eq!(crate::corpus::text::tokenize(w), vec![w.clone()]);
        }
    }
}
