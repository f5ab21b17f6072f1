use std::collections::HashSet;
use std::ops::Range;

use once_cell::sync::Lazy;

use super::wordlist::parse_word_list;

static DEFAULT_ABBREVIATIONS: Lazy<Abbreviations> =
    Lazy::new(|| Abbreviations::from_list(include_str!("../../data/abbreviations.txt")));

/// Period-terminated abbreviations that stay attached to their period, matched
/// case-insensitively ("e.g.", "Fig.", "No.").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abbreviations(HashSet<String>);

impl Abbreviations {
    pub fn from_list(content: &str) -> Self {
        Abbreviations(parse_word_list(content).into_iter().collect())
    }

    pub fn contains(&self, word_with_period: &str) -> bool {
        self.0.contains(&word_with_period.to_lowercase())
    }
}

impl Default for Abbreviations {
    fn default() -> Self {
        DEFAULT_ABBREVIATIONS.clone()
    }
}

/// A token before tagging: just its byte span in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawToken {
    pub start: usize,
    pub end: usize,
}

impl RawToken {
    pub fn surface<'a>(&self, text: &'a str) -> &'a str {
        &text[self.start..self.end]
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

fn is_connector(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}' | '.' | '/')
}

/// Splits text into word and punctuation tokens.
///
/// A word is a run of alphanumerics that may contain single internal connectors
/// (`-`, `'`, `.`, `/`) when they sit between two alphanumerics, so
/// "bi-directional", "3.5", "km/h" and "e.g" stay whole. A trailing period is
/// attached when the result is a known abbreviation. Every other non-whitespace
/// character is its own token.
pub fn tokenize_with(text: &str, abbreviations: &Abbreviations) -> Vec<RawToken> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_alphanumeric() {
            i += 1;
            tokens.push(RawToken {
                start,
                end: byte_at(i),
            });
            continue;
        }
        let mut j = i + 1;
        loop {
            while j < chars.len() && chars[j].1.is_alphanumeric() {
                j += 1;
            }
            if j + 1 < chars.len() && is_connector(chars[j].1) && chars[j + 1].1.is_alphanumeric() {
                j += 2;
            } else {
                break;
            }
        }
        if j < chars.len() && chars[j].1 == '.' {
            let candidate = &text[start..byte_at(j + 1)];
            if abbreviations.contains(candidate) {
                j += 1;
            }
        }
        tokens.push(RawToken {
            start,
            end: byte_at(j),
        });
        i = j;
    }
    tokens
}

/// [`tokenize_with`] using the bundled abbreviation list.
pub fn tokenize(text: &str) -> Vec<RawToken> {
    tokenize_with(text, &DEFAULT_ABBREVIATIONS)
}
