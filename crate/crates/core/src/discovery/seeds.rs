use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stance side of a discovered feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Yes,
    No,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Yes => "yes",
            Side::No => "no",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hand-picked hashtags anchoring each side. Matching is case-sensitive, so
/// case variants are listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSets {
    yes: Vec<String>,
    no: Vec<String>,
    yes_set: BTreeSet<String>,
    no_set: BTreeSet<String>,
}

impl Default for SeedSets {
    fn default() -> Self {
        SeedSets::new(["#EVET", "#Evet", "#evet"], ["#HAYIR", "#Hayır", "#hayır"])
            .expect("default seeds are valid")
    }
}

impl SeedSets {
    pub fn new<I, J, S, T>(yes: I, no: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut yes_list: Vec<String> = Vec::new();
        for s in yes.into_iter().map(Into::into) {
            if !yes_list.contains(&s) {
                yes_list.push(s);
            }
        }
        let mut no_list: Vec<String> = Vec::new();
        for s in no.into_iter().map(Into::into) {
            if !no_list.contains(&s) {
                no_list.push(s);
            }
        }
        if yes_list.is_empty() || no_list.is_empty() {
            return Err(Error::InvalidConfig("both seed sets must be nonempty".into()));
        }
        for s in yes_list.iter().chain(&no_list) {
            if !s.starts_with('#') || s.len() < 2 {
                return Err(Error::InvalidConfig(format!("seed {s:?} is not a hashtag")));
            }
        }
        let yes_set: BTreeSet<String> = yes_list.iter().cloned().collect();
        let no_set: BTreeSet<String> = no_list.iter().cloned().collect();
        if let Some(s) = yes_set.intersection(&no_set).next() {
            return Err(Error::InvalidConfig(format!("seed {s} is on both sides")));
        }
        Ok(SeedSets { yes: yes_list, no: no_list, yes_set, no_set })
    }

    pub fn yes(&self) -> &BTreeSet<String> {
        &self.yes_set
    }

    pub fn no(&self) -> &BTreeSet<String> {
        &self.no_set
    }

    /// Seeds in the order they were given.
    pub fn yes_ordered(&self) -> &[String] {
        &self.yes
    }

    pub fn no_ordered(&self) -> &[String] {
        &self.no
    }

    pub fn side(&self, side: Side) -> &BTreeSet<String> {
        match side {
            Side::Yes => &self.yes_set,
            Side::No => &self.no_set,
        }
    }

    /// Which side, if any, `token` seeds.
    pub fn side_of(&self, token: &str) -> Option<Side> {
        if self.yes_set.contains(token) {
            Some(Side::Yes)
        } else if self.no_set.contains(token) {
            Some(Side::No)
        } else {
            None
        }
    }
}
