use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::index::{jaccard_sorted, CooccurrenceIndex};
use super::seeds::{SeedSets, Side};

/// Tokens of one side sorted by score descending, ties by token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedFeatureList {
    side: Side,
    entries: Vec<(String, f64)>,
}

impl RankedFeatureList {
    /// Sorts `entries` into rank order. Later duplicates of a token are dropped.
    pub fn new(side: Side, mut entries: Vec<(String, f64)>) -> Self {
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let mut seen = std::collections::HashSet::new();
        entries.retain(|(t, _)| seen.insert(t.clone()));
        RankedFeatureList { side, entries }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self, k: usize) -> &[(String, f64)] {
        &self.entries[..k.min(self.entries.len())]
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(t, _)| t.as_str())
    }
}

/// Scores every indexed token against both sides' seed-tweet sets.
pub fn score_candidates(index: &CooccurrenceIndex) -> (RankedFeatureList, RankedFeatureList) {
    let (seed_yes, seed_no) = index.seed_postings();
    let scored: Vec<(String, f64, f64)> = index
        .postings()
        .par_iter()
        .map(|(token, tweets)| (token.clone(), jaccard_sorted(seed_yes, tweets), jaccard_sorted(seed_no, tweets)))
        .collect();
    let yes = scored.iter().map(|(t, y, _)| (t.clone(), *y)).collect();
    let no = scored.into_iter().map(|(t, _, n)| (t, n)).collect();
    (RankedFeatureList::new(Side::Yes, yes), RankedFeatureList::new(Side::No, no))
}

/// Puts every token on the side where it scores higher. Exact ties are
/// dropped, and a side never keeps its own seeds.
pub fn assign_disjoint(
    yes_list: &RankedFeatureList,
    no_list: &RankedFeatureList,
    seeds: &SeedSets,
) -> (RankedFeatureList, RankedFeatureList) {
    let yes_scores: HashMap<&str, f64> = yes_list.entries.iter().map(|(t, s)| (t.as_str(), *s)).collect();
    let no_scores: HashMap<&str, f64> = no_list.entries.iter().map(|(t, s)| (t.as_str(), *s)).collect();
    let mut yes_out = Vec::new();
    let mut no_out = Vec::new();
    let tokens = yes_list.tokens().chain(no_list.tokens().filter(|t| !yes_scores.contains_key(t)));
    for token in tokens {
        let y = yes_scores.get(token).copied().unwrap_or(0.0);
        let n = no_scores.get(token).copied().unwrap_or(0.0);
        if y > n && !seeds.yes().contains(token) {
            yes_out.push((token.to_string(), y));
        } else if n > y && !seeds.no().contains(token) {
            no_out.push((token.to_string(), n));
        }
    }
    (RankedFeatureList::new(Side::Yes, yes_out), RankedFeatureList::new(Side::No, no_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Tweet;
    use crate::discovery::index::{index_tweets, TokenKind};
    use chrono::{TimeZone, Utc};

    fn example() -> (RankedFeatureList, RankedFeatureList) {
        let ts = Utc.with_ymd_and_hms(2017, 4, 1, 0, 0, 0).unwrap();
        let tweets: Vec<Tweet> = ["#EVET #a", "#EVET", "#a #HAYIR"]
            .iter()
            .enumerate()
            .map(|(i, t)| Tweet::new(format!("t{}", i + 1), "u", ts, *t))
            .collect();
        score_candidates(&index_tweets(&tweets, &SeedSets::default(), TokenKind::Hashtag).unwrap())
    }

    fn score(list: &RankedFeatureList, token: &str) -> Option<f64> {
        list.entries().iter().find(|(t, _)| t == token).map(|e| e.1)
    }

    #[test]
    fn scores_on_three_tweets() {
        let (yes, no) = example();
        assert_eq!(score(&yes, "#a"), Some(1.0 / 3.0));
        assert_eq!(score(&no, "#a"), Some(0.5));
        assert_eq!(score(&yes, "#EVET"), Some(1.0));
        assert_eq!(score(&no, "#HAYIR"), Some(1.0));
    }

    #[test]
    fn assignment_on_three_tweets() {
        let (yes, no) = example();
        let (y, n) = assign_disjoint(&yes, &no, &SeedSets::default());
        assert!(y.is_empty());
        assert_eq!(n.entries(), &[("#a".to_string(), 0.5)]);
    }

    #[test]
    fn ties_are_dropped() {
        let yes = RankedFeatureList::new(Side::Yes, vec![("#t".into(), 0.2), ("#y".into(), 0.3)]);
        let no = RankedFeatureList::new(Side::No, vec![("#t".into(), 0.2), ("#y".into(), 0.1), ("#n".into(), 0.4)]);
        let (y, n) = assign_disjoint(&yes, &no, &SeedSets::default());
        assert_eq!(y.tokens().collect::<Vec<_>>(), vec!["#y"]);
        assert_eq!(n.tokens().collect::<Vec<_>>(), vec!["#n"]);
    }

    #[test]
    fn cross_side_seed_may_be_assigned() {
        let yes = RankedFeatureList::new(Side::Yes, vec![("#HAYIR".into(), 0.4), ("#EVET".into(), 0.9)]);
        let no = RankedFeatureList::new(Side::No, vec![("#HAYIR".into(), 0.1), ("#EVET".into(), 0.3)]);
        let (y, n) = assign_disjoint(&yes, &no, &SeedSets::default());
        assert_eq!(y.tokens().collect::<Vec<_>>(), vec!["#HAYIR"]);
        assert!(n.is_empty());
    }

    #[test]
    fn rank_order_breaks_ties_by_token() {
        let l = RankedFeatureList::new(Side::Yes, vec![("b".into(), 0.5), ("a".into(), 0.5), ("c".into(), 0.7)]);
        assert_eq!(l.tokens().collect::<Vec<_>>(), vec!["c", "a", "b"]);
        assert_eq!(l.top(1).len(), 1);
        assert_eq!(l.top(10).len(), 3);
    }
}
