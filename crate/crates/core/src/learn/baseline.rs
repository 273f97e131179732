use crate::corpus::{extract_hashtags, ClassLabel, UserDocument};
use crate::discovery::SeedSets;

/// Seed-hashtag occurrence votes `(yes, no)` over a document.
pub fn seed_votes(doc: &UserDocument, seeds: &SeedSets) -> (usize, usize) {
    let mut votes = (0, 0);
    for text in doc.texts() {
        for tag in extract_hashtags(text) {
            if seeds.yes().contains(&tag) {
                votes.0 += 1;
            } else if seeds.no().contains(&tag) {
                votes.1 += 1;
            }
        }
    }
    votes
}

/// Every seed occurrence is a vote for its side; ties are Ambiguous.
pub fn baseline_classify(doc: &UserDocument, seeds: &SeedSets) -> ClassLabel {
    match seed_votes(doc, seeds) {
        (y, n) if y > n => ClassLabel::Yes,
        (y, n) if n > y => ClassLabel::No,
        _ => ClassLabel::Ambiguous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Tweet;
    use chrono::{TimeZone, Utc};

    fn doc(texts: &[&str]) -> UserDocument {
        let ts = Utc.with_ymd_and_hms(2017, 4, 1, 0, 0, 0).unwrap();
        let tweets = texts.iter().enumerate().map(|(i, t)| Tweet::new(format!("t{i}"), "u", ts, *t)).collect();
        UserDocument::new("u", tweets, ClassLabel::Ambiguous).unwrap()
    }

    #[test]
    fn votes() {
        let seeds = SeedSets::default();
        assert_eq!(baseline_classify(&doc(&["#EVET #EVET", "#EVET #HAYIR"]), &seeds), ClassLabel::Yes);
        assert_eq!(baseline_classify(&doc(&["#HAYIR #Evet", "#hayır #EVET"]), &seeds), ClassLabel::Ambiguous);
        assert_eq!(baseline_classify(&doc(&["seçim"]), &seeds), ClassLabel::Ambiguous);
        assert_eq!(baseline_classify(&doc(&["#Hayır", "#hayır #evet"]), &seeds), ClassLabel::No);
    }

    #[test]
    fn duplication_invariance() {
        let seeds = SeedSets::default();
        let base = ["#EVET #HAYIR #Evet", "#hayır", "x #Hayır"];
        for c in 1..5 {
            let repeated: Vec<&str> = base.iter().copied().cycle().take(base.len() * c).collect();
            assert_eq!(baseline_classify(&doc(&repeated), &seeds), baseline_classify(&doc(&base), &seeds));
        }
    }
}
