//! Entity extraction, stripping and tokenization of tweet text.

fn is_tag_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Hashtags in order of appearance, duplicates kept, casing preserved.
///
/// A hashtag is `#` followed by the maximal run of letters, digits or `_`.
pub fn extract_hashtags(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        if c != '#' {
            continue;
        }
        let mut end = start + 1;
        while let Some(&(i, n)) = chars.peek() {
            if !is_tag_char(n) {
                break;
            }
            end = i + n.len_utf8();
            chars.next();
        }
        if end > start + 1 {
            out.push(text[start..end].to_string());
        }
    }
    out
}

const URL_MARKERS: [&str; 3] = ["http://", "https://", "t.co/"];

fn find_url(piece: &str) -> Option<usize> {
    let lower = piece.to_ascii_lowercase();
    URL_MARKERS.iter().filter_map(|m| lower.find(m)).min()
}

/// Removes `@` mentions from one whitespace-free piece, and hashtags too
/// unless `keep_hashtags` is set.
fn strip_piece(piece: &str, keep_hashtags: bool) -> String {
    let mut out = String::with_capacity(piece.len());
    let mut chars = piece.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '@' | '#' => {
                let mut run = String::new();
                while let Some(&n) = chars.peek() {
                    if !is_tag_char(n) {
                        break;
                    }
                    run.push(n);
                    chars.next();
                }
                if c == '#' && keep_hashtags && !run.is_empty() {
                    out.push('#');
                    out.push_str(&run);
                }
            }
            _ => out.push(c),
        }
    }
    out
}

/// Drops mentions and URLs (and hashtags unless `keep_hashtags`), collapsing
/// whitespace to single spaces.
pub fn strip_entities(text: &str, keep_hashtags: bool) -> String {
    let mut kept: Vec<String> = Vec::new();
    for piece in text.split_whitespace() {
        let mut piece = strip_piece(piece, keep_hashtags);
        while let Some(at) = find_url(&piece) {
            piece.truncate(at);
        }
        if piece.is_empty() || piece.eq_ignore_ascii_case("t.co") {
            continue;
        }
        kept.push(piece);
    }
    kept.join(" ")
}

/// Lowercases with the Turkish dotted/dotless I rules.
pub fn fold_case(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    for c in word.chars() {
        match c {
            'I' => out.push('ı'),
            'İ' => out.push('i'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    out
}

/// Splits on anything that is not a letter or digit, folds case, and keeps
/// tokens of at least two characters that contain a letter.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(fold_case)
        .filter(|t| t.chars().count() >= 2 && t.chars().any(char::is_alphabetic))
        .collect()
}

/// Word tokens with hashtags, mentions and URLs removed.
pub fn word_terms(text: &str) -> Vec<String> {
    tokenize(&strip_entities(text, false))
}

/// Terms for topic modeling: words plus hashtags, mentions and URLs removed.
pub fn topic_terms(text: &str) -> Vec<String> {
    let mut terms = word_terms(text);
    terms.extend(extract_hashtags(&strip_entities(text, true)));
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hashtags_in_order() {
        assert_eq!(extract_hashtags("#EVET diyoruz #Türkiye"), vec!["#EVET", "#Türkiye"]);
        assert!(extract_hashtags("oy ver").is_empty());
        assert_eq!(extract_hashtags("#Hayır! #Hayır"), vec!["#Hayır", "#Hayır"]);
        assert_eq!(extract_hashtags("# ## #a_b1"), vec!["#a_b1"]);
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_entities("oy ver #EVET @user http://t.co/x", false), "oy ver");
        assert_eq!(strip_entities("oy ver #EVET @user", true), "oy ver #EVET");
        assert_eq!(strip_entities("", false), "");
        assert_eq!(strip_entities("  a   b\t\nc ", false), "a b c");
        assert_eq!(strip_entities("bak t.co/abc HTTPS://X.com şimdi", true), "bak şimdi");
        assert_eq!(strip_entities("RT @u1: evet", false), "RT : evet");
        assert_eq!(tokenize(&strip_entities("RT @u1: evet", false)), vec!["rt", "evet"]);
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("HAYIR"), vec!["hayır"]);
        assert_eq!(tokenize("İstanbul'da oy"), vec!["istanbul", "da", "oy"]);
        assert_eq!(tokenize("16 Nisan"), vec!["nisan"]);
        assert_eq!(tokenize("a 2b b2"), vec!["2b", "b2"]);
    }

    #[test]
    fn topic_terms_keep_hashtags() {
        assert_eq!(topic_terms("Oy ver #EVET @ali http://t.co/q"), vec!["oy", "ver", "#EVET"]);
    }

    proptest! {
        #[test]
        fn hashtag_tokens_match_rule(s in "\\PC{0,40}") {
            for h in extract_hashtags(&s) {
                let mut cs = h.chars();
                prop_assert_eq!(cs.next(), Some('#'));
                let rest: Vec<char> = cs.collect();
                prop_assert!(!rest.is_empty());
                prop_assert!(rest.iter().all(|&c| is_tag_char(c)));
            }
        }

        #[test]
        fn stripped_text_has_no_entities(s in "[#@a-zA-Z:/. ht]{0,40}|\\PC{0,40}") {
            let out = strip_entities(&s, false);
            prop_assert!(!out.contains('#'));
            prop_assert!(!out.contains('@'));
            let lower = out.to_ascii_lowercase();
            for m in URL_MARKERS {
                prop_assert!(!lower.contains(m));
            }
        }

        #[test]
        fn tokenize_is_idempotent(s in "\\PC{0,40}") {
            let once = tokenize(&s);
            let twice = tokenize(&once.join(" "));
            prop_assert_eq!(once, twice);
        }
    }
}
