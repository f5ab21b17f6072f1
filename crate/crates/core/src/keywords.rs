//! Keyword mining: count normalised noun phrases, drop generic English terms,
//! score by TF-IDF and keep the top K.
//!
//! IDF is the smoothed variant `ln((1 + N) / (1 + df)) + 1`. With a single
//! document it is exactly 1 and scores equal raw counts.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::WordnetLexicon;
use crate::preprocess::{Pipeline, PreprocessedDoc};
use crate::scalar::Real;

pub const DEFAULT_TOP_K: usize = 50;

/// Phrase → occurrence count for one document. Ordered so every downstream
/// iteration is deterministic.
pub type Counts = BTreeMap<String, u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KeywordError {
    #[error("target document index {index} out of range for {len} documents")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("top_k must be at least 1")]
    InvalidTopK,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct Keyword<F> {
    pub phrase: String,
    pub tf: u64,
    pub idf: F,
    pub score: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordConfig {
    pub top_k: usize,
    /// Texts of documents from other domains, used only for document frequency.
    pub background_docs: Vec<String>,
    pub wordnet_filter: bool,
}

impl Default for KeywordConfig {
    fn default() -> Self {
        KeywordConfig {
            top_k: DEFAULT_TOP_K,
            background_docs: Vec::new(),
            wordnet_filter: true,
        }
    }
}

pub fn count_candidates(doc: &PreprocessedDoc) -> Counts {
    let mut counts = Counts::new();
    for np in &doc.noun_phrases {
        *counts.entry(np.normalized.clone()).or_default() += 1;
    }
    counts
}

/// Removes every phrase that WordNet lists as a lemma. Multi-word phrases are
/// checked whole, so "lunar rover" survives even though "rover" does not.
pub fn filter_generic(candidates: &Counts, lexicon: &WordnetLexicon) -> Counts {
    candidates
        .iter()
        .filter(|(phrase, _)| !lexicon.contains_lemma(phrase))
        .map(|(p, &tf)| (p.clone(), tf))
        .collect()
}

/// Smoothed inverse document frequency.
pub fn smoothed_idf<F: Real>(n_docs: usize, df: usize) -> F {
    if n_docs <= 1 {
        return F::one();
    }
    let one = F::one();
    ((one + F::from_usize_lossy(n_docs)) / (one + F::from_usize_lossy(df))).ln() + one
}

/// Scores every phrase of `per_doc_counts[target_index]` against the whole
/// collection. Output follows the phrase order of the target's counts.
pub fn score_tfidf<F: Real>(
    per_doc_counts: &[Counts],
    target_index: usize,
) -> Result<Vec<Keyword<F>>, KeywordError> {
    let target = per_doc_counts
        .get(target_index)
        .ok_or(KeywordError::IndexOutOfRange {
            index: target_index,
            len: per_doc_counts.len(),
        })?;
    let n = per_doc_counts.len();
    Ok(target
        .iter()
        .filter(|(_, &tf)| tf > 0)
        .map(|(phrase, &tf)| {
            let df = per_doc_counts
                .iter()
                .filter(|c| c.get(phrase).is_some_and(|&t| t > 0))
                .count();
            let idf: F = smoothed_idf(n, df);
            let tf_f = F::from_u64(tf).unwrap_or_else(F::infinity);
            Keyword {
                phrase: phrase.clone(),
                tf,
                idf,
                score: tf_f * idf,
            }
        })
        .collect())
}

/// Total order: score descending, then tf descending, then phrase ascending.
pub fn keyword_order<F: Real>(a: &Keyword<F>, b: &Keyword<F>) -> Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(Ordering::Equal)
        .then_with(|| b.tf.cmp(&a.tf))
        .then_with(|| a.phrase.cmp(&b.phrase))
}

pub fn select_top_k<F: Real>(mut keywords: Vec<Keyword<F>>, k: usize) -> Vec<Keyword<F>> {
    keywords.sort_by(keyword_order);
    keywords.truncate(k);
    keywords
}

/// Full keyword stage for one requirements text.
pub fn extract_keywords<F: Real>(
    pipeline: &Pipeline,
    text: &str,
    config: &KeywordConfig,
) -> Result<Vec<Keyword<F>>, KeywordError> {
    if config.top_k == 0 {
        return Err(KeywordError::InvalidTopK);
    }
    let target = count_candidates(&pipeline.process(text, "input"));
    let target = match (config.wordnet_filter, pipeline.lexicon()) {
        (true, Some(lexicon)) => filter_generic(&target, lexicon),
        _ => target,
    };
    let mut all = vec![target];
    for (i, doc) in config.background_docs.iter().enumerate() {
        all.push(count_candidates(
            &pipeline.process(doc, &format!("background-{i}")),
        ));
    }
    Ok(select_top_k(score_tfidf(&all, 0)?, config.top_k))
}

/// Writes `phrase<TAB>tf<TAB>idf<TAB>score` rows, one per keyword, in the
/// given order.
pub fn write_keywords_tsv<F: Real, W: Write>(
    keywords: &[Keyword<F>],
    mut out: W,
) -> io::Result<()> {
    for k in keywords {
        writeln!(out, "{}\t{}\t{:.6}\t{:.6}", k.phrase, k.tf, k.idf, k.score)?;
    }
    Ok(())
}

/// Phrases surviving the filter, for set comparisons.
pub fn phrase_set<F>(keywords: &[Keyword<F>]) -> BTreeSet<&str> {
    keywords.iter().map(|k| k.phrase.as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counts(pairs: &[(&str, u64)]) -> Counts {
        pairs.iter().map(|&(p, n)| (p.to_string(), n)).collect()
    }

    fn kw(phrase: &str, tf: u64, score: f64) -> Keyword<f64> {
        Keyword {
            phrase: phrase.into(),
            tf,
            idf: 1.0,
            score,
        }
    }

    #[test]
    fn counts_strip_determiners() {
        let doc = Pipeline::new().process(
            "The rover moved. A rover stopped near the lunar rover.",
            "t",
        );
        let c = count_candidates(&doc);
        assert_eq!(c, counts(&[("rover", 2), ("lunar rover", 1)]));
        assert!(count_candidates(&Pipeline::new().process("", "e")).is_empty());
    }

    #[test]
    fn single_document_scores_are_raw_counts() {
        let k: Vec<Keyword<f64>> = score_tfidf(&[counts(&[("x", 3)])], 0).unwrap();
        assert_eq!(k[0].score, 3.0);
        assert_eq!(k[0].idf, 1.0);
    }

    #[test]
    fn two_documents() {
        let docs = [counts(&[("only", 2), ("both", 2)]), counts(&[("both", 5)])];
        let k: Vec<Keyword<f64>> = score_tfidf(&docs, 0).unwrap();
        let both = k.iter().find(|k| k.phrase == "both").unwrap();
        let only = k.iter().find(|k| k.phrase == "only").unwrap();
        assert_eq!(both.idf, 1.0);
        assert_eq!(both.score, 2.0);
        // ln(3/2) + 1
        assert!((only.idf - 1.405_465_108_108_164_4).abs() < 1e-12);
        assert!((only.score - 2.810_930_216_216_329).abs() < 1e-12);
    }

    #[test]
    fn bad_target_index() {
        let r: Result<Vec<Keyword<f64>>, _> = score_tfidf(&[Counts::new()], 1);
        assert_eq!(
            r.unwrap_err(),
            KeywordError::IndexOutOfRange { index: 1, len: 1 }
        );
    }

    #[test]
    fn top_k_tiebreaks() {
        let picked = select_top_k(vec![kw("b", 2, 2.0), kw("a", 2, 2.0)], 1);
        assert_eq!(picked[0].phrase, "a");
        let picked = select_top_k(vec![kw("a", 1, 2.0), kw("b", 2, 2.0)], 1);
        assert_eq!(picked[0].phrase, "b");
        assert_eq!(
            select_top_k(vec![kw("a", 1, 1.0), kw("b", 1, 3.0), kw("c", 1, 2.0)], 50).len(),
            3
        );
    }

    #[test]
    fn zero_top_k_rejected() {
        let cfg = KeywordConfig {
            top_k: 0,
            ..Default::default()
        };
        assert_eq!(
            extract_keywords::<f64>(&Pipeline::new(), "x", &cfg).unwrap_err(),
            KeywordError::InvalidTopK
        );
    }

    #[test]
    fn tsv_format() {
        let mut buf = Vec::new();
        write_keywords_tsv(&[kw("lunar rover", 2, 2.0)], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lunar rover\t2\t1.000000\t2.000000\n"
        );
    }

    fn arb_counts() -> impl Strategy<Value = Counts> {
        prop::collection::btree_map("[a-e]{1,2}", 1u64..6, 0..12)
    }

    proptest! {
        #[test]
        fn top_k_is_prefix(c in arb_counts(), k in 1usize..10, k2 in 1usize..10) {
            let all: Vec<Keyword<f64>> = score_tfidf(&[c], 0).unwrap();
            let (small, big) = (k.min(k2), k.max(k2));
            let a = select_top_k(all.clone(), small);
            let b = select_top_k(all.clone(), big);
            prop_assert_eq!(a.len(), small.min(all.len()));
            prop_assert_eq!(&b[..a.len()], &a[..]);
        }

        #[test]
        fn single_doc_degenerates_to_tf(c in arb_counts()) {
            let scored: Vec<Keyword<f32>> = score_tfidf(std::slice::from_ref(&c), 0).unwrap();
            for k in scored {
                prop_assert_eq!(k.score, c[&k.phrase] as f32);
            }
        }

        #[test]
        fn filter_then_rank_equals_rank_then_filter(
            target in arb_counts(),
            other in arb_counts(),
            generic in prop::collection::btree_set("[a-e]{1,2}", 0..8),
        ) {
            let keep = |p: &str| !generic.contains(p);
            let filtered: Counts = target.iter().filter(|(p, _)| keep(p)).map(|(p, &n)| (p.clone(), n)).collect();
            let a: Vec<Keyword<f64>> = select_top_k(score_tfidf(&[filtered, other.clone()], 0).unwrap(), usize::MAX);
            let b: Vec<Keyword<f64>> = select_top_k(score_tfidf(&[target, other], 0).unwrap(), usize::MAX)
                .into_iter()
                .filter(|k| keep(&k.phrase))
                .collect();
            prop_assert_eq!(phrase_set(&a), phrase_set(&b));
        }
    }
}
