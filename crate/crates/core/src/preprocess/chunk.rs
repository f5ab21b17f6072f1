use std::ops::Range;

use super::tagger::Pos;

fn is_modifier(pos: Pos) -> bool {
    matches!(pos, Pos::Adj | Pos::Noun | Pos::Propn | Pos::Num)
}

/// Token ranges matching `DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN)`, scanning left
/// to right and taking the longest match at each start (non-overlapping).
pub fn chunk_spans(tags: &[Pos]) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < tags.len() {
        let body = if tags[i] == Pos::Det { i + 1 } else { i };
        let mut j = body;
        let mut last_head = None;
        while j < tags.len() && is_modifier(tags[j]) {
            if tags[j].is_nominal() {
                last_head = Some(j);
            }
            j += 1;
        }
        match last_head {
            Some(head) => {
                spans.push(i..head + 1);
                i = head + 1;
            }
            None => i += 1,
        }
    }
    spans
}
