//! Seed-hashtag co-occurrence discovery of side-specific features.

mod index;
mod rank;
mod seeds;
mod space;

pub use index::{index_token_tweets, index_tweets, jaccard, CooccurrenceIndex, TokenKind};
pub use rank::{assign_disjoint, score_candidates, RankedFeatureList};
pub use seeds::{SeedSets, Side};
pub use space::{build_feature_space, read_feature_space, write_feature_space, FeatureKind, FeatureSpace, Provenance};

use crate::corpus::LabeledCorpus;
use crate::error::Result;

/// Index, score and assign in one go: the disjoint Yes and No lists.
pub fn discover(
    corpus: &LabeledCorpus,
    seeds: &SeedSets,
    kind: TokenKind,
) -> Result<(RankedFeatureList, RankedFeatureList)> {
    let index = index_token_tweets(corpus, seeds, kind)?;
    let (yes, no) = score_candidates(&index);
    Ok(assign_disjoint(&yes, &no, seeds))
}
