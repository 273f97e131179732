//! Tweet-stream and labels file formats.
//!
//! Tweet streams are JSON lines with the fields `id`, `user_id`,
//! `timestamp` (RFC 3339 / ISO-8601), `text`, `is_retweet` and an optional
//! `retweet_of`. Labels are `user_id<TAB>label` lines.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde_json::{Map, Value};

use super::model::{ClassLabel, Tweet};
use crate::error::{Error, Result};

fn opaque_id(obj: &Map<String, Value>, field: &str) -> Result<Option<String>> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(Value::Number(n)) => Ok(Some(n.to_string())),
        Some(other) => Err(Error::MalformedRecord(format!("{field} must be a string, got {other}"))),
    }
}

fn required_id(obj: &Map<String, Value>, field: &str) -> Result<String> {
    match opaque_id(obj, field)? {
        Some(s) if !s.is_empty() => Ok(s),
        _ => Err(Error::MissingField(field.to_string())),
    }
}

/// Parses one line of a tweet stream.
pub fn parse_tweet_record(line: &str) -> Result<Tweet> {
    let value: Value =
        serde_json::from_str(line).map_err(|e| Error::MalformedRecord(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(Error::MalformedRecord("record is not a JSON object".into()));
    };
    let id = required_id(&obj, "id")?;
    let user_id = required_id(&obj, "user_id")?;
    let timestamp = match obj.get("timestamp") {
        None | Some(Value::Null) => return Err(Error::MissingField("timestamp".into())),
        Some(Value::String(s)) => DateTime::parse_from_rfc3339(s)
            .map_err(|e| Error::MalformedRecord(format!("bad timestamp {s:?}: {e}")))?
            .with_timezone(&Utc),
        Some(other) => {
            return Err(Error::MalformedRecord(format!("timestamp must be a string, got {other}")))
        }
    };
    let text = match obj.get("text") {
        None | Some(Value::Null) => return Err(Error::MissingField("text".into())),
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(Error::MalformedRecord(format!("text must be a string, got {other}"))),
    };
    let is_retweet = match obj.get("is_retweet") {
        None | Some(Value::Null) => return Err(Error::MissingField("is_retweet".into())),
        Some(Value::Bool(b)) => *b,
        Some(other) => {
            return Err(Error::MalformedRecord(format!("is_retweet must be a boolean, got {other}")))
        }
    };
    let retweet_of = opaque_id(&obj, "retweet_of")?;
    let tweet = Tweet { id, user_id, timestamp, text, is_retweet, retweet_of };
    tweet.validate()?;
    Ok(tweet)
}

/// Serializes a tweet as one stream line (no trailing newline).
pub fn format_tweet_record(tweet: &Tweet) -> String {
    serde_json::to_string(tweet).expect("tweet serialization is infallible")
}

/// Reads a whole tweet stream, skipping blank lines.
pub fn read_tweets<R: BufRead>(reader: R) -> Result<Vec<Tweet>> {
    let mut tweets = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let tweet = parse_tweet_record(&line).map_err(|e| match e {
            Error::MalformedRecord(m) => Error::MalformedRecord(format!("line {}: {m}", n + 1)),
            other => other,
        })?;
        tweets.push(tweet);
    }
    Ok(tweets)
}

/// Parses several stream files concurrently and merges them by
/// `(timestamp, id)`.
pub fn read_tweet_files<P: AsRef<Path> + Sync>(paths: &[P]) -> Result<Vec<Tweet>> {
    let parts: Vec<Vec<Tweet>> = paths
        .par_iter()
        .map(|p| read_tweets(BufReader::new(File::open(p.as_ref())?)))
        .collect::<Result<_>>()?;
    let mut tweets: Vec<Tweet> = parts.into_iter().flatten().collect();
    tweets.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
    Ok(tweets)
}

pub fn write_tweets<W: Write>(mut w: W, tweets: &[Tweet]) -> Result<()> {
    for t in tweets {
        writeln!(w, "{}", format_tweet_record(t))?;
    }
    Ok(())
}

/// Parses a `user_id<TAB>label` file.
pub fn read_labels<R: BufRead>(reader: R) -> Result<BTreeMap<String, ClassLabel>> {
    let mut labels = BTreeMap::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (user, label) = line
            .split_once('\t')
            .ok_or_else(|| Error::MalformedRecord(format!("labels line {}: expected user_id<TAB>label", n + 1)))?;
        if user.is_empty() {
            return Err(Error::MissingField("user_id".into()));
        }
        let label: ClassLabel = label.parse()?;
        if labels.insert(user.to_string(), label).is_some() {
            return Err(Error::MalformedRecord(format!("labels line {}: duplicate user {user}", n + 1)));
        }
    }
    Ok(labels)
}

pub fn write_labels<W: Write>(mut w: W, labels: &BTreeMap<String, ClassLabel>) -> Result<()> {
    for (user, label) in labels {
        writeln!(w, "{user}\t{label}")?;
    }
    Ok(())
}

pub fn read_tweets_path(path: &Path) -> Result<Vec<Tweet>> {
    read_tweet_files(&[PathBuf::from(path)])
}

pub fn read_labels_path(path: &Path) -> Result<BTreeMap<String, ClassLabel>> {
    read_labels(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_record() {
        let t = parse_tweet_record(
            r##"{"id":"1","user_id":"u1","timestamp":"2017-04-10T08:00:00Z","text":"#EVET","is_retweet":false}"##,
        )
        .unwrap();
        assert_eq!(t.id, "1");
        assert_eq!(t.user_id, "u1");
        assert_eq!(t.text, "#EVET");
        assert!(!t.is_retweet);
        assert_eq!(t.retweet_of, None);
    }

    #[test]
    fn parses_retweet_linkage() {
        let t = parse_tweet_record(
            r#"{"id":"2","user_id":"u1","timestamp":"2017-04-10T08:00:00+03:00","text":"x","is_retweet":true,"retweet_of":"9"}"#,
        )
        .unwrap();
        assert!(t.is_retweet);
        assert_eq!(t.retweet_of.as_deref(), Some("9"));
        assert_eq!(t.timestamp.to_rfc3339(), "2017-04-10T05:00:00+00:00");
    }

    #[test]
    fn missing_user_is_named() {
        let e = parse_tweet_record(r#"{"id":"1","timestamp":"2017-04-10T08:00:00Z","text":"x","is_retweet":false}"#)
            .unwrap_err();
        assert!(matches!(e, Error::MissingField(ref f) if f == "user_id"), "{e}");
    }

    #[test]
    fn rejects_bad_syntax_and_timestamps() {
        assert!(matches!(parse_tweet_record("{not json"), Err(Error::MalformedRecord(_))));
        let bad_ts = r#"{"id":"1","user_id":"u","timestamp":"yesterday","text":"x","is_retweet":false}"#;
        assert!(matches!(parse_tweet_record(bad_ts), Err(Error::MalformedRecord(_))));
        let orphan = r#"{"id":"1","user_id":"u","timestamp":"2017-04-10T08:00:00Z","text":"x","is_retweet":false,"retweet_of":"3"}"#;
        assert!(matches!(parse_tweet_record(orphan), Err(Error::MalformedRecord(_))));
    }

    #[test]
    fn record_round_trip() {
        let line = r##"{"id":"7","user_id":"u9","timestamp":"2017-04-16T23:59:59Z","text":"Hayır #HAYIR","is_retweet":true,"retweet_of":"3"}"##;
        let t = parse_tweet_record(line).unwrap();
        assert_eq!(format_tweet_record(&t), line);
    }

    #[test]
    fn labels_file() {
        let labels = read_labels("u1\tyes\nu2\tno\n\nu3\tambiguous\n".as_bytes()).unwrap();
        assert_eq!(labels.len(), 3);
        assert_eq!(labels["u3"], ClassLabel::Ambiguous);
        assert!(read_labels("u1\tYES\n".as_bytes()).is_err());
        assert!(read_labels("u1 yes\n".as_bytes()).is_err());
        let mut out = Vec::new();
        write_labels(&mut out, &labels).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "u1\tyes\nu2\tno\nu3\tambiguous\n");
    }
}
