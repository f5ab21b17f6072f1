//! Text preprocessing: tokenize, split sentences, tag, lemmatize, mark
//! stopwords and chunk noun phrases.
//!
//! Input is NFC-normalised first; every byte span in the output refers to the
//! normalised text, which is kept on [`PreprocessedDoc::text`].

mod chunk;
mod sentence;
mod tagger;
mod tokenize;
mod wordlist;

use std::ops::Range;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::lexicon::{WordnetLexicon, WordnetPos};

pub use chunk::chunk_spans;
pub use sentence::{sentence_token_ranges, split_sentences, split_sentences_with};
pub use tagger::{default_tagger, Pos, TagLexiconError, Tagger, UnknownPos};
pub use tokenize::{tokenize, tokenize_with, Abbreviations, RawToken};
pub use wordlist::StopwordList;

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("{source_id}: input is not valid UTF-8 (first bad byte at offset {valid_up_to})")]
    InvalidEncoding {
        source_id: String,
        valid_up_to: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub is_stopword: bool,
    /// Byte offsets into the normalised document text.
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NounPhrase {
    /// Matched text, including any leading determiner.
    pub surface: String,
    /// Lowercased, boundary stopwords stripped, head noun lemmatized.
    pub normalized: String,
    pub token_count: usize,
    pub sentence: usize,
    /// Token indices of the match within its sentence.
    pub tokens: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreprocessedDoc {
    pub source_id: String,
    pub text: String,
    pub sentences: Vec<Sentence>,
    pub noun_phrases: Vec<NounPhrase>,
}

/// Canonical form of `surface` for `pos`: the WordNet base form when one is
/// found, otherwise the lowercased surface. Only NOUN, VERB, ADJ and ADV are
/// looked up.
pub fn lemmatize(surface: &str, pos: Pos, lexicon: Option<&WordnetLexicon>) -> String {
    let lower = surface.to_lowercase();
    match (lexicon, WordnetPos::try_from(pos)) {
        (Some(lex), Ok(wn_pos)) => lex.morphy(&lower, wn_pos).unwrap_or(lower),
        _ => lower,
    }
}

/// The configured pipeline. Immutable once built, so it can be shared across
/// threads.
#[derive(Debug, Clone)]
pub struct Pipeline {
    tagger: Arc<Tagger>,
    stopwords: StopwordList,
    abbreviations: Abbreviations,
    lexicon: Option<Arc<WordnetLexicon>>,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            tagger: Arc::new(default_tagger().clone()),
            stopwords: StopwordList::default(),
            abbreviations: Abbreviations::default(),
            lexicon: None,
        }
    }
}

impl Pipeline {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_lexicon(mut self, lexicon: Arc<WordnetLexicon>) -> Self {
        self.lexicon = Some(lexicon);
        self
    }

    pub fn with_tagger(mut self, tagger: Tagger) -> Self {
        self.tagger = Arc::new(tagger);
        self
    }

    pub fn with_stopwords(mut self, stopwords: StopwordList) -> Self {
        self.stopwords = stopwords;
        self
    }

    pub fn with_abbreviations(mut self, abbreviations: Abbreviations) -> Self {
        self.abbreviations = abbreviations;
        self
    }

    pub fn lexicon(&self) -> Option<&WordnetLexicon> {
        self.lexicon.as_deref()
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stopwords
    }

    pub fn tagger(&self) -> &Tagger {
        &self.tagger
    }

    pub fn tokenize(&self, text: &str) -> Vec<RawToken> {
        tokenize_with(text, &self.abbreviations)
    }

    pub fn lemmatize(&self, surface: &str, pos: Pos) -> String {
        lemmatize(surface, pos, self.lexicon())
    }

    /// Runs the pipeline on raw bytes, rejecting input that is not UTF-8.
    pub fn process_bytes(
        &self,
        bytes: &[u8],
        source_id: &str,
    ) -> Result<PreprocessedDoc, PreprocessError> {
        let text = std::str::from_utf8(bytes).map_err(|e| PreprocessError::InvalidEncoding {
            source_id: source_id.to_string(),
            valid_up_to: e.valid_up_to(),
        })?;
        Ok(self.process(text, source_id))
    }

    pub fn process(&self, text: &str, source_id: &str) -> PreprocessedDoc {
        let text: String = text.nfc().collect();
        let raw = self.tokenize(&text);
        let mut sentences = Vec::new();
        let mut noun_phrases = Vec::new();
        for range in sentence_token_ranges(&text, &raw) {
            let sentence = self.build_sentence(&text, &raw[range]);
            noun_phrases.extend(self.chunk_noun_phrases(&sentence, sentences.len()));
            sentences.push(sentence);
        }
        PreprocessedDoc {
            source_id: source_id.to_string(),
            text,
            sentences,
            noun_phrases,
        }
    }

    fn build_sentence(&self, text: &str, raw: &[RawToken]) -> Sentence {
        let words: Vec<&str> = raw.iter().map(|t| t.surface(text)).collect();
        let tags = self.tagger.tag(&words);
        let tokens = raw
            .iter()
            .zip(words.iter().zip(tags))
            .map(|(t, (&surface, pos))| Token {
                surface: surface.to_string(),
                lemma: self.lemmatize(surface, pos),
                pos,
                is_stopword: self.stopwords.contains(surface),
                span: (t.start, t.end),
            })
            .collect();
        let start = raw.first().map_or(0, |t| t.start);
        let end = raw.last().map_or(0, |t| t.end);
        Sentence {
            tokens,
            text: text[start..end].to_string(),
        }
    }

    /// Noun phrases of one tagged sentence. Matches whose tokens are all
    /// stopwords once the edges are stripped are dropped.
    pub fn chunk_noun_phrases(&self, sentence: &Sentence, index: usize) -> Vec<NounPhrase> {
        let tags: Vec<Pos> = sentence.tokens.iter().map(|t| t.pos).collect();
        chunk_spans(&tags)
            .into_iter()
            .filter_map(|span| self.normalize_span(sentence, index, span))
            .collect()
    }

    fn normalize_span(
        &self,
        sentence: &Sentence,
        index: usize,
        span: Range<usize>,
    ) -> Option<NounPhrase> {
        let tokens = &sentence.tokens[span.clone()];
        let mut lo = 0;
        let mut hi = tokens.len();
        while lo < hi
            && (tokens[lo].pos == Pos::Det || self.stopwords.contains(&tokens[lo].surface))
        {
            lo += 1;
        }
        // the head contributes its lemma, so check that form too
        while lo < hi
            && (self.stopwords.contains(&tokens[hi - 1].surface)
                || self.stopwords.contains(&tokens[hi - 1].lemma))
        {
            hi -= 1;
        }
        if lo == hi {
            return None;
        }
        let kept = &tokens[lo..hi];
        let mut words: Vec<String> = kept[..kept.len() - 1]
            .iter()
            .map(|t| t.surface.to_lowercase())
            .collect();
        words.push(kept[kept.len() - 1].lemma.clone());
        let start = tokens[0].span.0 - sentence.tokens[0].span.0;
        let end = tokens[tokens.len() - 1].span.1 - sentence.tokens[0].span.0;
        Some(NounPhrase {
            surface: sentence.text[start..end].to_string(),
            normalized: words.join(" "),
            token_count: tokens.len(),
            sentence: index,
            tokens: span,
        })
    }
}
