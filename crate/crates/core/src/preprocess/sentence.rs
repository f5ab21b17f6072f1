use std::ops::Range;

use super::tokenize::{tokenize_with, Abbreviations, RawToken};

fn is_terminator(s: &str) -> bool {
    matches!(s, "." | "!" | "?")
}

fn is_closer(s: &str) -> bool {
    matches!(s, ")" | "]" | "\"" | "'" | "\u{201d}" | "\u{2019}")
}

fn starts_upper_or_digit(s: &str) -> bool {
    s.chars()
        .next()
        .is_some_and(|c| c.is_uppercase() || c.is_ascii_digit())
}

/// Groups tokens into sentences, returning token-index ranges.
///
/// A sentence ends at `.`, `!` or `?` (plus any closing quotes or brackets) when
/// whitespace and a capitalised word or a digit follow. Abbreviations never end a
/// sentence because the tokenizer keeps their period attached. A blank line also
/// ends a sentence.
pub fn sentence_token_ranges(text: &str, tokens: &[RawToken]) -> Vec<Range<usize>> {
    let mut ranges = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < tokens.len() {
        let mut end = i + 1;
        let surface = tokens[i].surface(text);
        let mut boundary = false;
        if is_terminator(surface) {
            while end < tokens.len()
                && is_closer(tokens[end].surface(text))
                && tokens[end].start == tokens[end - 1].end
            {
                end += 1;
            }
            boundary = match tokens.get(end) {
                None => true,
                Some(next) => {
                    next.start > tokens[end - 1].end && starts_upper_or_digit(next.surface(text))
                }
            };
        }
        if !boundary {
            if let Some(next) = tokens.get(end) {
                let gap = &text[tokens[end - 1].end..next.start];
                boundary = gap.matches('\n').count() >= 2;
            }
        }
        if boundary || end == tokens.len() {
            ranges.push(start..end);
            start = end;
        }
        i = end;
    }
    ranges
}

/// Sentence boundaries as byte ranges that partition `text`: the first range
/// starts at 0, each later range starts at its first token, the last ends at
/// `text.len()`. Whitespace-only text has no sentences.
pub fn split_sentences_with(text: &str, abbreviations: &Abbreviations) -> Vec<Range<usize>> {
    let tokens = tokenize_with(text, abbreviations);
    let groups = sentence_token_ranges(text, &tokens);
    let starts: Vec<usize> = groups
        .iter()
        .enumerate()
        .map(|(k, g)| if k == 0 { 0 } else { tokens[g.start].start })
        .collect();
    starts
        .iter()
        .enumerate()
        .map(|(k, &s)| s..starts.get(k + 1).copied().unwrap_or(text.len()))
        .collect()
}

pub fn split_sentences(text: &str) -> Vec<Range<usize>> {
    split_sentences_with(text, &Abbreviations::default())
}
