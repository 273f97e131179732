use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rank::RankedFeatureList;
use super::seeds::{SeedSets, Side};
use crate::error::{Error, Result};

/// Feature family of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Hashtag,
    Bow,
    Tfidf,
    Lda,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 4] = [FeatureKind::Hashtag, FeatureKind::Bow, FeatureKind::Tfidf, FeatureKind::Lda];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKind::Hashtag => "hashtag",
            FeatureKind::Bow => "bow",
            FeatureKind::Tfidf => "tfidf",
            FeatureKind::Lda => "lda",
        }
    }

    /// The k values swept by default for this family.
    pub fn default_k_grid(self) -> &'static [usize] {
        match self {
            FeatureKind::Hashtag => &[5, 10, 25, 50, 100, 250, 500, 1000, 2500, 5000, 7500],
            FeatureKind::Bow => &[5, 50, 100, 250, 500, 1000, 2500, 5000, 10000, 20000, 25000],
            FeatureKind::Tfidf => &[100, 250, 500, 1000, 2500, 5000, 10000, 20000, 50000],
            FeatureKind::Lda => &[10, 20, 50, 100, 200, 500, 1000, 2500, 5000, 10000, 15000],
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown feature kind {s:?}")))
    }
}

/// Where a feature-space token came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    /// Discovered for a stance side with its Jaccard score.
    Side { side: Side, score: f64 },
    /// First topic whose top terms contain the token, with the term probability.
    Topic { topic: usize, weight: f64 },
    /// Corpus-wide occurrence count.
    Frequency { count: u64 },
}

/// Ordered set of feature tokens shared by every vectorizer.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpace {
    kind: FeatureKind,
    k: usize,
    tokens: Vec<String>,
    provenance: Vec<Provenance>,
    index: HashMap<String, usize>,
}

impl FeatureSpace {
    /// Builds a space from candidate entries; repeated tokens keep their first
    /// position and provenance.
    pub fn new(kind: FeatureKind, k: usize, entries: impl IntoIterator<Item = (String, Provenance)>) -> Self {
        let mut tokens = Vec::new();
        let mut provenance = Vec::new();
        let mut index = HashMap::new();
        for (token, prov) in entries {
            if index.contains_key(&token) {
                continue;
            }
            index.insert(token.clone(), tokens.len());
            tokens.push(token);
            provenance.push(prov);
        }
        FeatureSpace { kind, k, tokens, provenance, index }
    }

    pub fn kind(&self) -> FeatureKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }
}

/// Top `k` tokens of each assigned list, Yes side first.
pub fn build_feature_space(
    yes_list: &RankedFeatureList,
    no_list: &RankedFeatureList,
    k: usize,
    kind: FeatureKind,
) -> FeatureSpace {
    let entries = [yes_list, no_list].into_iter().flat_map(|list| {
        let side = list.side();
        list.top(k).iter().map(move |(t, s)| (t.clone(), Provenance::Side { side, score: *s }))
    });
    FeatureSpace::new(kind, k, entries)
}

const HEADER_TAG: &str = "# feature-space v1";

/// Writes the tab-separated `rank token side score` file with a header line
/// recording kind, k and seed sets.
pub fn write_feature_space<W: Write>(mut w: W, space: &FeatureSpace, seeds: &SeedSets) -> Result<()> {
    writeln!(
        w,
        "{HEADER_TAG}\tkind={}\tk={}\tseeds_yes={}\tseeds_no={}",
        space.kind,
        space.k,
        seeds.yes_ordered().join(","),
        seeds.no_ordered().join(",")
    )?;
    for (i, (token, prov)) in space.tokens.iter().zip(&space.provenance).enumerate() {
        let (side, score) = match prov {
            Provenance::Side { side, score } => (side.to_string(), score.to_string()),
            Provenance::Topic { topic, weight } => (format!("topic:{topic}"), weight.to_string()),
            Provenance::Frequency { count } => ("freq".to_string(), count.to_string()),
        };
        writeln!(w, "{}\t{token}\t{side}\t{score}", i + 1)?;
    }
    Ok(())
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ModelFormat(msg.into())
}

pub fn read_feature_space<R: BufRead>(reader: R) -> Result<(FeatureSpace, SeedSets)> {
    let mut lines = reader.lines();
    let header = lines.next().ok_or_else(|| bad("empty feature-space file"))??;
    let mut fields = header.split('\t');
    if fields.next() != Some(HEADER_TAG) {
        return Err(bad("missing feature-space header"));
    }
    let mut meta: HashMap<&str, &str> = HashMap::new();
    for f in fields {
        let (key, value) = f.split_once('=').ok_or_else(|| bad(format!("bad header field {f:?}")))?;
        meta.insert(key, value);
    }
    let get = |key: &str| meta.get(key).copied().ok_or_else(|| bad(format!("header lacks {key}")));
    let kind: FeatureKind = get("kind")?.parse()?;
    let k: usize = get("k")?.parse().map_err(|_| bad("bad k"))?;
    let seeds = SeedSets::new(get("seeds_yes")?.split(','), get("seeds_no")?.split(','))?;

    let mut entries = Vec::new();
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [_, token, side, score] = cols[..] else {
            return Err(bad(format!("expected 4 columns: {line:?}")));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad score {s:?}")));
        let prov = match side {
            "yes" => Provenance::Side { side: Side::Yes, score: num(score)? },
            "no" => Provenance::Side { side: Side::No, score: num(score)? },
            "freq" => Provenance::Frequency { count: score.parse().map_err(|_| bad(format!("bad count {score:?}")))? },
            other => {
                let topic = other
                    .strip_prefix("topic:")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(format!("bad side {other:?}")))?;
                Provenance::Topic { topic, weight: num(score)? }
            }
        };
        entries.push((token.to_string(), prov));
    }
    Ok((FeatureSpace::new(kind, k, entries), seeds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists() -> (RankedFeatureList, RankedFeatureList) {
        (
            RankedFeatureList::new(Side::Yes, vec![("#y1".into(), 0.3), ("#y2".into(), 0.2), ("#y3".into(), 0.1)]),
            RankedFeatureList::new(Side::No, vec![("#a".into(), 0.5)]),
        )
    }

    #[test]
    fn yes_side_first_and_bounded() {
        let (y, n) = lists();
        let s = build_feature_space(&y, &n, 1, FeatureKind::Hashtag);
        assert_eq!(s.tokens(), ["#y1", "#a"]);
        assert_eq!(s.position("#a"), Some(1));
        let all = build_feature_space(&y, &n, 100, FeatureKind::Hashtag);
        assert_eq!(all.len(), y.len() + n.len());
    }

    #[test]
    fn nested_in_k() {
        let (y, n) = lists();
        for k1 in 1..5 {
            for k2 in k1..5 {
                let a = build_feature_space(&y, &n, k1, FeatureKind::Bow);
                let b = build_feature_space(&y, &n, k2, FeatureKind::Bow);
                assert!(a.len() <= 2 * k1);
                assert!(a.tokens().iter().all(|t| b.position(t).is_some()));
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let (y, n) = lists();
        let mut space = build_feature_space(&y, &n, 2, FeatureKind::Hashtag);
        space.provenance[0] = Provenance::Topic { topic: 3, weight: 0.125 };
        space.provenance[1] = Provenance::Frequency { count: 17 };
        let seeds = SeedSets::default();
        let mut buf = Vec::new();
        write_feature_space(&mut buf, &space, &seeds).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# feature-space v1\tkind=hashtag\tk=2\tseeds_yes=#EVET,#Evet,#evet\tseeds_no=#HAYIR,#Hayır,#hayır\n"));
        assert!(text.contains("3\t#a\tno\t0.5\n"));
        let (back, back_seeds) = read_feature_space(buf.as_slice()).unwrap();
        assert_eq!(back, space);
        assert_eq!(back_seeds, seeds);
    }

    #[test]
    fn kinds_parse() {
        for k in FeatureKind::ALL {
            assert_eq!(k.as_str().parse::<FeatureKind>().unwrap(), k);
        }
        assert!("baseline".parse::<FeatureKind>().is_err());
        assert_eq!(FeatureKind::Hashtag.default_k_grid().len(), 11);
    }
}
