use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::seeds::SeedSets;
use crate::corpus::text::{extract_hashtags, word_terms};
use crate::corpus::{LabeledCorpus, Tweet};
use crate::error::{Error, Result};

/// What counts as a token when indexing tweets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Hashtag,
    Word,
}

impl TokenKind {
    pub fn tokens(self, text: &str) -> Vec<String> {
        match self {
            TokenKind::Hashtag => extract_hashtags(text),
            TokenKind::Word => word_terms(text),
        }
    }
}

/// For every candidate token, the tweets containing it, plus the tweets
/// containing any seed of each side. Tweets are referred to by their position
/// in the indexed sequence.
#[derive(Debug, Clone)]
pub struct CooccurrenceIndex {
    kind: TokenKind,
    seeds: SeedSets,
    tweet_ids: Vec<String>,
    token_tweets: BTreeMap<String, Vec<u32>>,
    seed_tweets_yes: Vec<u32>,
    seed_tweets_no: Vec<u32>,
}

impl CooccurrenceIndex {
    pub fn kind(&self) -> TokenKind {
        self.kind
    }

    pub fn seeds(&self) -> &SeedSets {
        &self.seeds
    }

    pub fn len(&self) -> usize {
        self.token_tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_tweets.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.token_tweets.keys().map(String::as_str)
    }

    pub(crate) fn postings(&self) -> &BTreeMap<String, Vec<u32>> {
        &self.token_tweets
    }

    pub(crate) fn seed_postings(&self) -> (&[u32], &[u32]) {
        (&self.seed_tweets_yes, &self.seed_tweets_no)
    }

    fn ids(&self, positions: &[u32]) -> BTreeSet<&str> {
        positions.iter().map(|&p| self.tweet_ids[p as usize].as_str()).collect()
    }

    /// Ids of the tweets containing `token`.
    pub fn token_tweets(&self, token: &str) -> Option<BTreeSet<&str>> {
        self.token_tweets.get(token).map(|p| self.ids(p))
    }

    pub fn seed_tweets_yes(&self) -> BTreeSet<&str> {
        self.ids(&self.seed_tweets_yes)
    }

    pub fn seed_tweets_no(&self) -> BTreeSet<&str> {
        self.ids(&self.seed_tweets_no)
    }
}

/// Indexes the tweets of a labeled corpus.
pub fn index_token_tweets(corpus: &LabeledCorpus, seeds: &SeedSets, kind: TokenKind) -> Result<CooccurrenceIndex> {
    index_tweets(corpus.tweets(), seeds, kind)
}

/// Indexes every token that shares at least one tweet with a seed hashtag.
/// Seed membership is always decided on hashtags, whatever `kind` is.
pub fn index_tweets<'a, I>(tweets: I, seeds: &SeedSets, kind: TokenKind) -> Result<CooccurrenceIndex>
where
    I: IntoIterator<Item = &'a Tweet>,
{
    let mut tweet_ids = Vec::new();
    let mut tweet_tokens: Vec<Vec<String>> = Vec::new();
    let mut seed_tweets_yes = Vec::new();
    let mut seed_tweets_no = Vec::new();
    let mut candidates: HashSet<String> = HashSet::new();

    for (pos, tweet) in tweets.into_iter().enumerate() {
        let pos = u32::try_from(pos).expect("fewer than 2^32 tweets");
        let hashtags = extract_hashtags(&tweet.text);
        let has_yes = hashtags.iter().any(|h| seeds.yes().contains(h));
        let has_no = hashtags.iter().any(|h| seeds.no().contains(h));
        let mut tokens = match kind {
            TokenKind::Hashtag => hashtags,
            TokenKind::Word => word_terms(&tweet.text),
        };
        tokens.sort_unstable();
        tokens.dedup();
        if has_yes {
            seed_tweets_yes.push(pos);
        }
        if has_no {
            seed_tweets_no.push(pos);
        }
        if has_yes || has_no {
            candidates.extend(tokens.iter().cloned());
        }
        tweet_ids.push(tweet.id.clone());
        tweet_tokens.push(tokens);
    }
    if seed_tweets_yes.is_empty() && seed_tweets_no.is_empty() {
        return Err(Error::NoSeedOccurrences);
    }

    let mut token_tweets: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for (pos, tokens) in tweet_tokens.into_iter().enumerate() {
        for t in tokens {
            if candidates.contains(&t) {
                token_tweets.entry(t).or_default().push(pos as u32);
            }
        }
    }
    Ok(CooccurrenceIndex {
        kind,
        seeds: seeds.clone(),
        tweet_ids,
        token_tweets,
        seed_tweets_yes,
        seed_tweets_no,
    })
}

/// `|a ∩ b| / |a ∪ b|`.
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Result<f64> {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        return Err(Error::BothEmpty);
    }
    Ok(inter as f64 / union as f64)
}

/// Jaccard over strictly increasing position lists, at least one nonempty.
pub(crate) fn jaccard_sorted(a: &[u32], b: &[u32]) -> f64 {
    let (mut i, mut j, mut inter) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}
