//! Semantic relatedness between a corpus and a held-out document, using
//! averaged word vectors and cosine similarity.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::preprocess::{tokenize, StopwordList};
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum RelatednessError {
    #[error("failed to read vectors from {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed vector line: {reason}")]
    MalformedVectorLine { line: usize, reason: String },
    #[error("line {line}: expected {expected} components, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector file contains no vectors")]
    EmptyTable,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("corpus has no articles")]
    EmptyCorpus,
}

/// Word vectors keyed by lowercase token.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable<F> {
    dimension: usize,
    vectors: HashMap<String, Vec<F>>,
    source: String,
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let count = it.next()?.parse().ok()?;
    let dim = it.next()?.parse().ok()?;
    it.next().is_none().then_some((count, dim))
}

impl<F: Real> EmbeddingTable<F> {
    /// Reads word2vec/GloVe text format: `token v1 ... vd` per line, with an
    /// optional `count dim` header. Tokens are lowercased; the first occurrence
    /// of a token wins.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, RelatednessError> {
        let path = path.as_ref();
        let io_err = |source| RelatednessError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::open(path).map_err(io_err)?;
        let mut table = Self::from_reader(BufReader::new(file)).map_err(|e| match e {
            RelatednessError::Io { source, .. } => io_err(source),
            other => other,
        })?;
        table.source = path.display().to_string();
        Ok(table)
    }

    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, RelatednessError> {
        let mut dimension = None;
        let mut vectors = HashMap::new();
        for (n, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| RelatednessError::Io {
                path: PathBuf::from("<reader>"),
                source,
            })?;
            let lineno = n + 1;
            if line.trim().is_empty() {
                continue;
            }
            if n == 0 {
                if let Some((_, dim)) = parse_header(&line) {
                    if dim == 0 {
                        return Err(RelatednessError::MalformedVectorLine {
                            line: lineno,
                            reason: "header declares dimension 0".into(),
                        });
                    }
                    dimension = Some(dim);
                    continue;
                }
            }
            let mut fields = line.split_whitespace();
            let token = fields.next().unwrap_or_default().to_lowercase();
            let values = fields
                .map(|f| {
                    f.parse::<F>()
                        .map_err(|_| RelatednessError::MalformedVectorLine {
                            line: lineno,
                            reason: format!("cannot parse component {f:?}"),
                        })
                })
                .collect::<Result<Vec<F>, _>>()?;
            if values.is_empty() {
                return Err(RelatednessError::MalformedVectorLine {
                    line: lineno,
                    reason: "token without components".into(),
                });
            }
            let expected = *dimension.get_or_insert(values.len());
            if values.len() != expected {
                return Err(RelatednessError::InconsistentDimension {
                    line: lineno,
                    expected,
                    found: values.len(),
                });
            }
            vectors.entry(token).or_insert(values);
        }
        match dimension {
            Some(dimension) if !vectors.is_empty() => Ok(EmbeddingTable {
                dimension,
                vectors,
                source: String::new(),
            }),
            _ => Err(RelatednessError::EmptyTable),
        }
    }

    /// Builds a table directly; every vector must have length `dimension`.
    pub fn from_vectors(
        dimension: usize,
        entries: impl IntoIterator<Item = (String, Vec<F>)>,
    ) -> Result<Self, RelatednessError> {
        let mut vectors = HashMap::new();
        for (i, (token, v)) in entries.into_iter().enumerate() {
            if v.len() != dimension {
                return Err(RelatednessError::InconsistentDimension {
                    line: i + 1,
                    expected: dimension,
                    found: v.len(),
                });
            }
            vectors.entry(token.to_lowercase()).or_insert(v);
        }
        if dimension == 0 || vectors.is_empty() {
            return Err(RelatednessError::EmptyTable);
        }
        Ok(EmbeddingTable {
            dimension,
            vectors,
            source: "memory".into(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn get(&self, token: &str) -> Option<&[F]> {
        self.vectors.get(token).map(Vec::as_slice)
    }
}

/// Mean vector of a document plus its vocabulary coverage.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentEmbedding<F> {
    pub vector: Vec<F>,
    /// Content tokens considered (stopwords and punctuation excluded).
    pub tokens: usize,
    /// Content tokens absent from the table.
    pub oov: usize,
}

impl<F: Real> DocumentEmbedding<F> {
    pub fn oov_rate(&self) -> F {
        if self.tokens == 0 {
            F::zero()
        } else {
            F::from_usize_lossy(self.oov) / F::from_usize_lossy(self.tokens)
        }
    }
}

/// Lowercases and tokenizes `text`, drops stopwords and punctuation, and averages
/// the vectors of in-vocabulary tokens. No in-vocabulary tokens gives the zero
/// vector.
pub fn embed_document<F: Real>(
    text: &str,
    table: &EmbeddingTable<F>,
    stopwords: &StopwordList,
) -> DocumentEmbedding<F> {
    let lower = text.to_lowercase();
    let mut sum = vec![F::zero(); table.dimension];
    let mut found = 0usize;
    let mut tokens = 0usize;
    for tok in tokenize(&lower) {
        let word = tok.surface(&lower);
        if !word.chars().any(char::is_alphanumeric) || stopwords.contains(word) {
            continue;
        }
        tokens += 1;
        if let Some(v) = table.get(word) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s = *s + *x;
            }
            found += 1;
        }
    }
    if found > 0 {
        let n = F::from_usize_lossy(found);
        for s in &mut sum {
            *s = *s / n;
        }
    }
    DocumentEmbedding {
        vector: sum,
        tokens,
        oov: tokens - found,
    }
}

/// Cosine similarity, 0 when either vector has zero norm.
pub fn cosine<F: Real>(u: &[F], v: &[F]) -> Result<F, RelatednessError> {
    if u.len() != v.len() {
        return Err(RelatednessError::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let (mut dot, mut uu, mut vv) = (F::zero(), F::zero(), F::zero());
    for (&a, &b) in u.iter().zip(v) {
        dot = dot + a * b;
        uu = uu + a * a;
        vv = vv + b * b;
    }
    if uu == F::zero() || vv == F::zero() {
        return Ok(F::zero());
    }
    let c = dot / (uu.sqrt() * vv.sqrt());
    Ok(c.max(-F::one()).min(F::one()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct ArticleScore<F> {
    pub page_id: u64,
    pub score: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct RelatednessReport<F> {
    pub per_article: Vec<ArticleScore<F>>,
    pub min: F,
    pub avg: F,
    pub max: F,
    pub oov_rate: F,
}

impl<F: Real> RelatednessReport<F> {
    /// Aggregates per-article scores, sorting them by page id.
    pub fn from_scores(
        mut per_article: Vec<ArticleScore<F>>,
        oov_rate: F,
    ) -> Result<Self, RelatednessError> {
        if per_article.is_empty() {
            return Err(RelatednessError::EmptyCorpus);
        }
        per_article.sort_by_key(|a| a.page_id);
        let scores = per_article.iter().map(|a| a.score);
        let min = scores.clone().fold(F::infinity(), F::min);
        let max = scores.clone().fold(F::neg_infinity(), F::max);
        let avg = scores.sum::<F>() / F::from_usize_lossy(per_article.len());
        // rounding in the mean can nudge it outside [min, max] when all scores agree
        let avg = avg.max(min).min(max);
        Ok(RelatednessReport {
            per_article,
            min,
            avg,
            max,
            oov_rate,
        })
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "articles: {}", self.per_article.len());
        let _ = writeln!(
            s,
            "cosine similarity: min={:.2} avg={:.2} max={:.2}",
            self.min.to_f64_lossy(),
            self.avg.to_f64_lossy(),
            self.max.to_f64_lossy()
        );
        let _ = writeln!(
            s,
            "test document OOV rate: {:.3}",
            self.oov_rate.to_f64_lossy()
        );
        s
    }
}

/// Scores every article against the test document.
pub fn evaluate<F, I, T>(
    articles: I,
    test_text: &str,
    table: &EmbeddingTable<F>,
    stopwords: &StopwordList,
) -> Result<RelatednessReport<F>, RelatednessError>
where
    F: Real,
    I: IntoIterator<Item = (u64, T)>,
    T: AsRef<str>,
{
    let test = embed_document(test_text, table, stopwords);
    let per_article = articles
        .into_iter()
        .map(|(page_id, text)| {
            let doc = embed_document(text.as_ref(), table, stopwords);
            cosine(&test.vector, &doc.vector).map(|score| ArticleScore { page_id, score })
        })
        .collect::<Result<Vec<_>, _>>()?;
    RelatednessReport::from_scores(per_article, test.oov_rate())
}
