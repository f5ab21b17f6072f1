use std::collections::HashSet;

use once_cell::sync::Lazy;

static DEFAULT_STOPWORDS: Lazy<StopwordList> =
    Lazy::new(|| StopwordList::from_list(include_str!("../../data/stopwords.txt")));

/// Parses a one-entry-per-line list; blank lines and `#` comments are skipped.
/// Entries are lowercased.
pub(crate) fn parse_word_list(content: &str) -> Vec<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// English stopword list, matched against lowercased surfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList(HashSet<String>);

impl StopwordList {
    pub fn from_list(content: &str) -> Self {
        StopwordList(parse_word_list(content).into_iter().collect())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        DEFAULT_STOPWORDS.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_list() {
        let s = StopwordList::default();
        assert_eq!(s.len(), 179);
        for w in ["the", "The", "in", "a", "of", "don't"] {
            assert!(s.contains(w), "{w}");
        }
        assert!(!s.contains("rover"));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let s = StopwordList::from_list("# header\n\nFoo\n  bar  \n");
        assert_eq!(s.len(), 2);
        assert!(s.contains("foo") && s.contains("BAR"));
    }
}
