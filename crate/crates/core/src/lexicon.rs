//! WordNet flat-file lexicon: lemma membership and morphy-style base-form search.
//!
//! Reads the `index.{noun,verb,adj,adv}` and `{noun,verb,adj,adv}.exc` files of a
//! WordNet 3.x `dict/` directory. Only lemma presence and the exception lists are
//! kept; synsets, pointers and glosses are ignored.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::preprocess::Pos;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("missing WordNet file {0}")]
    MissingFile(PathBuf),
    #[error("{file}:{line}: malformed line: {reason}")]
    MalformedLine {
        file: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// The four open-class parts of speech WordNet indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordnetPos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl WordnetPos {
    pub const ALL: [WordnetPos; 4] = [
        WordnetPos::Noun,
        WordnetPos::Verb,
        WordnetPos::Adj,
        WordnetPos::Adv,
    ];

    /// File suffix used by the WordNet distribution (`index.noun`, `verb.exc`, ...).
    pub fn file_suffix(self) -> &'static str {
        match self {
            WordnetPos::Noun => "noun",
            WordnetPos::Verb => "verb",
            WordnetPos::Adj => "adj",
            WordnetPos::Adv => "adv",
        }
    }

    /// Part-of-speech letter in field 2 of an index line. Satellite adjectives
    /// (`s`) only appear in data files, never in `index.adj`.
    fn index_letter(self) -> &'static str {
        match self {
            WordnetPos::Noun => "n",
            WordnetPos::Verb => "v",
            WordnetPos::Adj => "a",
            WordnetPos::Adv => "r",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    /// Suffix detachment rules, in the order morphy applies them.
    fn detachment_rules(self) -> &'static [(&'static str, &'static str)] {
        match self {
            WordnetPos::Noun => &[
                ("s", ""),
                ("ses", "s"),
                ("xes", "x"),
                ("zes", "z"),
                ("ches", "ch"),
                ("shes", "sh"),
                ("men", "man"),
                ("ies", "y"),
            ],
            WordnetPos::Verb => &[
                ("s", ""),
                ("ies", "y"),
                ("es", "e"),
                ("es", ""),
                ("ed", "e"),
                ("ed", ""),
                ("ing", "e"),
                ("ing", ""),
            ],
            WordnetPos::Adj => &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
            WordnetPos::Adv => &[],
        }
    }
}

impl TryFrom<Pos> for WordnetPos {
    type Error = Pos;

    fn try_from(pos: Pos) -> Result<Self, Self::Error> {
        match pos {
            Pos::Noun => Ok(WordnetPos::Noun),
            Pos::Verb => Ok(WordnetPos::Verb),
            Pos::Adj => Ok(WordnetPos::Adj),
            Pos::Adv => Ok(WordnetPos::Adv),
            other => Err(other),
        }
    }
}

impl fmt::Display for WordnetPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_suffix())
    }
}

/// Immutable WordNet lemma index plus irregular-form exception lists.
#[derive(Debug, Clone, Default)]
pub struct WordnetLexicon {
    entries: [HashSet<String>; 4],
    exceptions: [HashMap<String, Vec<String>>; 4],
    source_version: String,
}

/// Lowercases, maps underscores to spaces and collapses runs of whitespace.
fn normalize_phrase(phrase: &str) -> String {
    phrase
        .replace('_', " ")
        .split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_file(path: &Path) -> Result<String, LexiconError> {
    if !path.is_file() {
        return Err(LexiconError::MissingFile(path.to_path_buf()));
    }
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Pulls "3.0" out of a license header line such as
/// `  29 WordNet 3.0 Copyright 2006 by Princeton University.`
fn version_from_header(line: &str) -> Option<String> {
    let rest = &line[line.find("WordNet ")? + "WordNet ".len()..];
    let version: String = rest
        .chars()
        .take_while(|c| c.is_ascii_digit() || *c == '.')
        .collect();
    let version = version.trim_end_matches('.');
    (!version.is_empty()).then(|| version.to_string())
}

impl WordnetLexicon {
    /// Loads a WordNet `dict/` directory. All four `index.*` files are required;
    /// a missing `*.exc` file is treated as an empty exception list.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let dir = dir.as_ref();
        let mut lexicon = WordnetLexicon::default();
        let mut version = None;

        for pos in WordnetPos::ALL {
            let path = dir.join(format!("index.{}", pos.file_suffix()));
            let content = read_file(&path)?;
            let entries = &mut lexicon.entries[pos.slot()];
            for (n, line) in content.lines().enumerate() {
                // license header lines are indented
                if line.starts_with(' ') {
                    if version.is_none() {
                        version = version_from_header(line);
                    }
                    continue;
                }
                if line.trim().is_empty() {
                    continue;
                }
                let mut fields = line.split_whitespace();
                let (Some(lemma), Some(letter)) = (fields.next(), fields.next()) else {
                    return Err(LexiconError::MalformedLine {
                        file: path.clone(),
                        line: n + 1,
                        reason: "expected at least lemma and part-of-speech fields".into(),
                    });
                };
                if letter != pos.index_letter() {
                    return Err(LexiconError::MalformedLine {
                        file: path.clone(),
                        line: n + 1,
                        reason: format!(
                            "part-of-speech field is {letter:?}, expected {:?}",
                            pos.index_letter()
                        ),
                    });
                }
                entries.insert(normalize_phrase(lemma));
            }
        }

        for pos in WordnetPos::ALL {
            let path = dir.join(format!("{}.exc", pos.file_suffix()));
            if !path.is_file() {
                log::debug!("no exception list at {}", path.display());
                continue;
            }
            let content = read_file(&path)?;
            for (n, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let mut fields = line.split_whitespace();
                let inflected = fields.next().map(normalize_phrase);
                let bases: Vec<String> = fields
                    .map(normalize_phrase)
                    .filter(|base| lexicon.entries[pos.slot()].contains(base))
                    .collect();
                match inflected {
                    Some(inflected) if line.split_whitespace().count() >= 2 => {
                        if !bases.is_empty() {
                            lexicon.exceptions[pos.slot()]
                                .entry(inflected)
                                .or_default()
                                .extend(bases);
                        }
                    }
                    _ => {
                        return Err(LexiconError::MalformedLine {
                            file: path.clone(),
                            line: n + 1,
                            reason: "expected an inflected form followed by base forms".into(),
                        })
                    }
                }
            }
        }

        lexicon.source_version = version
            .map(|v| format!("WordNet {v}"))
            .unwrap_or_else(|| "unknown".to_string());
        Ok(lexicon)
    }

    pub fn source_version(&self) -> &str {
        &self.source_version
    }

    /// Number of distinct (lemma, part-of-speech) entries.
    pub fn len(&self) -> usize {
        self.entries.iter().map(HashSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, lemma: &str, pos: WordnetPos) -> bool {
        self.entries[pos.slot()].contains(&normalize_phrase(lemma))
    }

    /// True iff the phrase is a lemma under any part of speech. Multi-word phrases
    /// are looked up whole; their individual words are not consulted.
    pub fn contains_lemma(&self, phrase: &str) -> bool {
        let key = normalize_phrase(phrase);
        !key.is_empty() && self.entries.iter().any(|set| set.contains(&key))
    }

    /// Base form of `surface` under `pos`: exception list, then suffix detachment,
    /// then the form itself. Returns the first candidate that is a lemma.
    pub fn morphy(&self, surface: &str, pos: WordnetPos) -> Option<String> {
        let word = normalize_phrase(surface);
        if word.is_empty() {
            return None;
        }
        let entries = &self.entries[pos.slot()];
        if let Some(base) = self.exceptions[pos.slot()]
            .get(&word)
            .and_then(|bases| bases.first())
        {
            return Some(base.clone());
        }
        for (suffix, ending) in pos.detachment_rules() {
            if let Some(stem) = word.strip_suffix(suffix) {
                if stem.is_empty() {
                    continue;
                }
                let candidate = format!("{stem}{ending}");
                if entries.contains(&candidate) {
                    return Some(candidate);
                }
            }
        }
        entries.contains(&word).then_some(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, body: &str) {
        let mut f = fs::File::create(dir.join(name)).unwrap();
        f.write_all(body.as_bytes()).unwrap();
    }

    fn tiny() -> (tempfile::TempDir, WordnetLexicon) {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "index.noun",
            "  1 This software and database is provided\n  29 WordNet 3.1 Copyright 2011\n\
             goose n 1 2 @ ~ 1 0 01858313\nglass n 7 3 @ ~ + 7 4 1\n\
             rover n 2 1 @ 2 0 10532058 10525436\nice_cream n 1 1 @ 1 0 1\n",
        );
        write(dir.path(), "index.verb", "transmit v 3 2 @ ~ 3 2 1 2 3\n");
        write(dir.path(), "index.adj", "big a 1 1 & 1 0 1\n");
        write(dir.path(), "index.adv", "fast r 1 0 1 0 1\n");
        write(dir.path(), "noun.exc", "geese goose\nmice mouse\n");
        write(dir.path(), "verb.exc", "transmitted transmit\n");
        write(dir.path(), "adj.exc", "bigger big\n");
        let lex = WordnetLexicon::load(dir.path()).unwrap();
        (dir, lex)
    }

    #[test]
    fn reads_version_from_license_header() {
        let (_d, lex) = tiny();
        assert_eq!(lex.source_version(), "WordNet 3.1");
        assert_eq!(lex.len(), 7);
    }

    #[test]
    fn underscores_decode_to_spaces() {
        let (_d, lex) = tiny();
        assert!(lex.contains_lemma("ice cream"));
        assert!(lex.contains_lemma("  Ice   Cream "));
        assert!(!lex.contains_lemma(""));
    }

    #[test]
    fn exceptions_to_absent_bases_are_dropped() {
        let (_d, lex) = tiny();
        // "mouse" is not indexed, so "mice" has no usable exception
        assert_eq!(lex.morphy("mice", WordnetPos::Noun), None);
        assert_eq!(
            lex.morphy("geese", WordnetPos::Noun).as_deref(),
            Some("goose")
        );
    }

    #[test]
    fn morphy_rules_and_self_match() {
        let (_d, lex) = tiny();
        assert_eq!(
            lex.morphy("glasses", WordnetPos::Noun).as_deref(),
            Some("glass")
        );
        assert_eq!(
            lex.morphy("rovers", WordnetPos::Noun).as_deref(),
            Some("rover")
        );
        assert_eq!(
            lex.morphy("rover", WordnetPos::Noun).as_deref(),
            Some("rover")
        );
        assert_eq!(
            lex.morphy("transmitted", WordnetPos::Verb).as_deref(),
            Some("transmit")
        );
        assert_eq!(
            lex.morphy("transmits", WordnetPos::Verb).as_deref(),
            Some("transmit")
        );
        assert_eq!(
            lex.morphy("bigger", WordnetPos::Adj).as_deref(),
            Some("big")
        );
        assert_eq!(lex.morphy("xyzzy", WordnetPos::Noun), None);
        assert_eq!(lex.morphy("s", WordnetPos::Noun), None);
    }

    #[test]
    fn empty_directory_is_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        match WordnetLexicon::load(dir.path()) {
            Err(LexiconError::MissingFile(p)) => assert!(p.ends_with("index.noun")),
            other => panic!("expected MissingFile, got {other:?}"),
        }
    }

    #[test]
    fn wrong_pos_letter_is_malformed() {
        let (dir, _) = tiny();
        write(
            dir.path(),
            "index.verb",
            "transmit v 1 0 1 0 1\nrun n 1 0 1 0 1\n",
        );
        match WordnetLexicon::load(dir.path()) {
            Err(LexiconError::MalformedLine { file, line, .. }) => {
                assert!(file.ends_with("index.verb"));
                assert_eq!(line, 2);
            }
            other => panic!("expected MalformedLine, got {other:?}"),
        }
    }

    #[test]
    fn single_field_exception_line_is_malformed() {
        let (dir, _) = tiny();
        write(dir.path(), "noun.exc", "geese goose\nlonely\n");
        assert!(matches!(
            WordnetLexicon::load(dir.path()),
            Err(LexiconError::MalformedLine { line: 2, .. })
        ));
    }
}
