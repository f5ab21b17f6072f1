//! Lexicon-driven coarse part-of-speech tagger.
//!
//! Known words take their most frequent tag from the lexicon. Unknown words are
//! guessed from shape (capitalisation, digits) and suffixes, defaulting to NOUN.
//! A handful of contextual rules then repair the commonest noun/verb confusions
//! in requirements text ("shall display", "the display").

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

static DEFAULT_TAGGER: Lazy<Tagger> = Lazy::new(|| {
    Tagger::from_tsv(include_str!("../../data/tag_lexicon.tsv"))
        .expect("bundled tag lexicon is well formed")
});

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Propn,
    Verb,
    Adj,
    Adv,
    Det,
    Adp,
    Punct,
    Num,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 10] = [
        Pos::Noun,
        Pos::Propn,
        Pos::Verb,
        Pos::Adj,
        Pos::Adv,
        Pos::Det,
        Pos::Adp,
        Pos::Punct,
        Pos::Num,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Propn => "PROPN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Det => "DET",
            Pos::Adp => "ADP",
            Pos::Punct => "PUNCT",
            Pos::Num => "NUM",
            Pos::Other => "OTHER",
        }
    }

    pub fn is_nominal(self) -> bool {
        matches!(self, Pos::Noun | Pos::Propn)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown part-of-speech tag {0:?}")]
pub struct UnknownPos(pub String);

impl FromStr for Pos {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| UnknownPos(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum TagLexiconError {
    #[error("tag lexicon line {line}: expected word<TAB>tag, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("tag lexicon line {line}: {source}")]
    UnknownTag {
        line: usize,
        #[source]
        source: UnknownPos,
    },
}

const MODALS: &[&str] = &[
    "shall", "must", "will", "should", "can", "cannot", "may", "might", "could", "would",
];

const SUBJECT_PRONOUNS: &[&str] = &["i", "we", "you", "they", "he", "she", "it"];

const POSSESSIVES: &[&str] = &["its", "their", "his", "her", "our", "your", "my"];

const NOUN_SUFFIXES: &[&str] = &[
    "tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ist", "ship", "er", "or", "age",
    "ure", "ology",
];

const ADJ_SUFFIXES: &[&str] = &[
    "able", "ible", "al", "ful", "ous", "ive", "ic", "less", "ary", "ish", "borne",
];

fn is_number(word: &str) -> bool {
    word.starts_with(|c: char| c.is_ascii_digit())
        && word
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '-' | ':' | '/'))
}

fn unknown_word_tag(word: &str) -> Pos {
    if word.starts_with(|c: char| c.is_uppercase()) {
        return Pos::Propn;
    }
    if word.starts_with(|c: char| c.is_ascii_digit()) {
        return Pos::Num;
    }
    let lower = word.to_lowercase();
    if lower.ends_with("ly") {
        Pos::Adv
    } else if lower.ends_with("ing") || lower.ends_with("ed") {
        Pos::Verb
    } else if NOUN_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
        Pos::Noun
    } else if lower.contains('-') || ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
        Pos::Adj
    } else {
        Pos::Noun
    }
}

/// Coarse tagger over a most-frequent-tag lexicon.
#[derive(Debug, Clone)]
pub struct Tagger {
    lexicon: HashMap<String, Pos>,
}

impl Tagger {
    /// Parses `word<TAB>TAG` lines. When a word repeats, the first line wins, so
    /// files may list a word's alternatives after its most frequent tag.
    pub fn from_tsv(content: &str) -> Result<Self, TagLexiconError> {
        let mut lexicon = HashMap::new();
        for (n, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(word), Some(tag)) = (fields.next(), fields.next()) else {
                return Err(TagLexiconError::Malformed {
                    line: n + 1,
                    content: line.to_string(),
                });
            };
            let pos = tag
                .trim()
                .parse::<Pos>()
                .map_err(|source| TagLexiconError::UnknownTag {
                    line: n + 1,
                    source,
                })?;
            lexicon.entry(word.to_string()).or_insert(pos);
        }
        Ok(Tagger { lexicon })
    }

    pub fn lexicon_size(&self) -> usize {
        self.lexicon.len()
    }

    fn initial_tag(&self, word: &str, sentence_initial: bool) -> Pos {
        if !word.chars().any(char::is_alphanumeric) {
            return Pos::Punct;
        }
        if is_number(word) {
            return Pos::Num;
        }
        if let Some(&pos) = self.lexicon.get(word) {
            return pos;
        }
        if sentence_initial {
            if let Some(&pos) = self.lexicon.get(&word.to_lowercase()) {
                return pos;
            }
        }
        unknown_word_tag(word)
    }

    /// Tags one sentence. Always returns exactly one tag per word.
    pub fn tag(&self, words: &[&str]) -> Vec<Pos> {
        let mut tags: Vec<Pos> = words
            .iter()
            .enumerate()
            .map(|(i, w)| self.initial_tag(w, i == 0))
            .collect();
        let lower: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
        let is_modal = |i: usize| MODALS.contains(&lower[i].as_str());

        for i in 0..words.len() {
            let word = lower[i].as_str();
            let prev_tag = i.checked_sub(1).map(|p| tags[p]);
            let prev_word = i.checked_sub(1).map(|p| lower[p].as_str());
            let prev2_tag = i.checked_sub(2).map(|p| tags[p]);

            // "shall display", "to record", "shall not display", "they need"
            if tags[i] == Pos::Noun && !word.ends_with('s') {
                let after_modal_or_to = prev_word
                    .is_some_and(|w| w == "to" || SUBJECT_PRONOUNS.contains(&w))
                    || (i >= 1 && is_modal(i - 1));
                let after_modal_adverb = i >= 2 && is_modal(i - 2) && prev_tag == Some(Pos::Adv);
                if after_modal_or_to || after_modal_adverb {
                    tags[i] = Pos::Verb;
                    continue;
                }
            }
            // "the display", "its record", "the emergency brake"
            if tags[i] == Pos::Verb
                && !is_modal(i)
                && !word.ends_with("ed")
                && !word.ends_with("ing")
                && !matches!(
                    word,
                    "be" | "is"
                        | "are"
                        | "was"
                        | "were"
                        | "been"
                        | "has"
                        | "have"
                        | "had"
                        | "do"
                        | "does"
                )
            {
                let after_det = prev_tag == Some(Pos::Det)
                    || prev_word.is_some_and(|w| POSSESSIVES.contains(&w));
                // "this document specifies" is subject + verb, not a compound
                let after_det_adj = matches!(prev_tag, Some(Pos::Adj) | Some(Pos::Noun))
                    && prev2_tag == Some(Pos::Det)
                    && !word.ends_with('s');
                if after_det || after_det_adj {
                    tags[i] = Pos::Noun;
                }
            }
        }
        tags
    }
}

impl Default for Tagger {
    fn default() -> Self {
        DEFAULT_TAGGER.clone()
    }
}

/// Shared handle to the bundled tagger, avoiding a clone of the lexicon.
pub fn default_tagger() -> &'static Tagger {
    &DEFAULT_TAGGER
}
