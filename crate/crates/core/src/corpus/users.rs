//! Grouping tweets into user documents and choosing which users to keep.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{ClassLabel, LabeledCorpus, Tweet, UserDocument};
use crate::error::{Error, Result};

/// One document per labeled user, in user-id order. Tweets of unlabeled
/// users are ignored; retweets are kept verbatim.
pub fn build_user_documents(
    tweets: &[Tweet],
    labels: &BTreeMap<String, ClassLabel>,
) -> Result<LabeledCorpus> {
    let mut by_user: HashMap<&str, Vec<Tweet>> = HashMap::new();
    for t in tweets {
        if labels.contains_key(&t.user_id) {
            by_user.entry(t.user_id.as_str()).or_default().push(t.clone());
        }
    }
    let missing: Vec<String> =
        labels.keys().filter(|u| !by_user.contains_key(u.as_str())).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::LabeledUserWithoutTweets(missing));
    }
    let documents = labels
        .iter()
        .map(|(user, &label)| {
            let tweets = by_user.remove(user.as_str()).unwrap_or_default();
            UserDocument::new(user.clone(), tweets, label)
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledCorpus::new(documents)
}

/// Number of retweets authored by every user seen in the stream.
pub fn retweet_counts(tweets: &[Tweet]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for t in tweets {
        *counts.entry(t.user_id.clone()).or_insert(0) += usize::from(t.is_retweet);
    }
    counts
}

/// Users with at least `min_retweets` retweets.
pub fn filter_active_users(tweets: &[Tweet], min_retweets: usize) -> BTreeSet<String> {
    retweet_counts(tweets)
        .into_iter()
        .filter(|&(_, c)| c >= min_retweets)
        .map(|(u, _)| u)
        .collect()
}

/// Draws `n` users stratified by retweet activity.
///
/// Users sorted by `(count, user_id)` are cut into `n_strata` contiguous
/// strata of equal population (sizes differ by at most one, larger strata
/// first). Each stratum contributes `n / n_strata` users, the remainder going
/// to the lowest strata.
pub fn stratified_sample_by_activity(
    user_stats: &BTreeMap<String, usize>,
    n: usize,
    n_strata: usize,
    rng_seed: u64,
) -> Result<BTreeSet<String>> {
    if n_strata == 0 {
        return Err(Error::InvalidConfig("n_strata must be at least 1".into()));
    }
    let total = user_stats.len();
    if n > total {
        return Err(Error::InsufficientUsers { requested: n, available: total });
    }
    let mut users: Vec<(&String, usize)> = user_stats.iter().map(|(u, &c)| (u, c)).collect();
    users.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut chosen = BTreeSet::new();
    let mut start = 0;
    for s in 0..n_strata {
        let size = total / n_strata + usize::from(s < total % n_strata);
        let quota = n / n_strata + usize::from(s < n % n_strata);
        let stratum = &users[start..start + size];
        for i in index::sample(&mut rng, size, quota) {
            chosen.insert(stratum[i].0.clone());
        }
        start += size;
    }
    Ok(chosen)
}
