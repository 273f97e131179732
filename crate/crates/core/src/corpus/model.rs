use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stance label of a user. The declaration order is the tie-breaking order
/// used by every classifier: `Yes < No < Ambiguous`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassLabel {
    Yes,
    No,
    Ambiguous,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 3] = [ClassLabel::Yes, ClassLabel::No, ClassLabel::Ambiguous];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Yes => "yes",
            ClassLabel::No => "no",
            ClassLabel::Ambiguous => "ambiguous",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(ClassLabel::Yes),
            "no" => Ok(ClassLabel::No),
            "ambiguous" => Ok(ClassLabel::Ambiguous),
            other => Err(Error::MalformedRecord(format!("unknown label {other:?}"))),
        }
    }
}

/// One message from the stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub user_id: String,
    pub timestamp: DateTime<Utc>,
    pub text: String,
    pub is_retweet: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retweet_of: Option<String>,
}

impl Tweet {
    pub fn new(
        id: impl Into<String>,
        user_id: impl Into<String>,
        timestamp: DateTime<Utc>,
        text: impl Into<String>,
    ) -> Self {
        Tweet {
            id: id.into(),
            user_id: user_id.into(),
            timestamp,
            text: text.into(),
            is_retweet: false,
            retweet_of: None,
        }
    }

    /// Marks the tweet as a rebroadcast of `original`.
    pub fn retweet_of(mut self, original: impl Into<String>) -> Self {
        self.is_retweet = true;
        self.retweet_of = Some(original.into());
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::MissingField("id".into()));
        }
        if self.user_id.is_empty() {
            return Err(Error::MissingField("user_id".into()));
        }
        if self.retweet_of.is_some() && !self.is_retweet {
            return Err(Error::MalformedRecord(format!(
                "tweet {} has retweet_of but is_retweet is false",
                self.id
            )));
        }
        Ok(())
    }
}

/// All tweets of one user together with the user's label.
#[derive(Debug, Clone, PartialEq)]
pub struct UserDocument {
    user_id: String,
    tweets: Vec<Tweet>,
    label: ClassLabel,
}

impl UserDocument {
    pub fn new(user_id: impl Into<String>, tweets: Vec<Tweet>, label: ClassLabel) -> Result<Self> {
        let user_id = user_id.into();
        if tweets.is_empty() {
            return Err(Error::LabeledUserWithoutTweets(vec![user_id]));
        }
        if let Some(t) = tweets.iter().find(|t| t.user_id != user_id) {
            return Err(Error::MalformedRecord(format!(
                "tweet {} belongs to {} not {}",
                t.id, t.user_id, user_id
            )));
        }
        Ok(UserDocument { user_id, tweets, label })
    }

    pub fn user_id(&self) -> &str {
        &self.user_id
    }

    pub fn tweets(&self) -> &[Tweet] {
        &self.tweets
    }

    pub fn label(&self) -> ClassLabel {
        self.label
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tweets.iter().map(|t| t.text.as_str())
    }
}

/// Labeled user documents; the classification data set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabeledCorpus {
    documents: Vec<UserDocument>,
    class_counts: [usize; 3],
}

impl LabeledCorpus {
    pub fn new(documents: Vec<UserDocument>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(documents.len());
        let mut class_counts = [0; 3];
        for d in &documents {
            if !seen.insert(d.user_id()) {
                return Err(Error::MalformedRecord(format!("duplicate user {}", d.user_id())));
            }
            class_counts[d.label().index()] += 1;
        }
        Ok(LabeledCorpus { documents, class_counts })
    }

    pub fn documents(&self) -> &[UserDocument] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Per-label document counts, indexed by [`ClassLabel::index`].
    pub fn class_counts(&self) -> [usize; 3] {
        self.class_counts
    }

    pub fn labels(&self) -> Vec<ClassLabel> {
        self.documents.iter().map(UserDocument::label).collect()
    }

    pub fn tweets(&self) -> impl Iterator<Item = &Tweet> {
        self.documents.iter().flat_map(|d| d.tweets.iter())
    }

    /// Corpus restricted to the documents at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledCorpus {
        let documents: Vec<_> = indices.iter().map(|&i| self.documents[i].clone()).collect();
        let mut class_counts = [0; 3];
        for d in &documents {
            class_counts[d.label().index()] += 1;
        }
        LabeledCorpus { documents, class_counts }
    }
}
