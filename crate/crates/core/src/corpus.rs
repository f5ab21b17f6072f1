//! On-disk corpus: `articles/<page_id>.txt` plus a `manifest.json` describing
//! how the corpus was produced, and term-frequency reports over it.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Write};
use std::path::{Component, Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::crawler::ArticleRef;
use crate::preprocess::{Pipeline, Pos};
use crate::Keyword;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const ARTICLES_DIR: &str = "articles";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("duplicate page id {0}")]
    DuplicatePageId(u64),
    #[error("no manifest at {0}")]
    ManifestMissing(PathBuf),
    #[error("manifest {path} is not valid: {reason}")]
    MalformedManifest { path: PathBuf, reason: String },
    #[error("integrity check failed for {path}: {reason}")]
    Integrity { path: PathBuf, reason: String },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestArticle {
    pub page_id: u64,
    pub title: String,
    pub byte_length: u64,
    pub relative_path: String,
}

/// Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub rs_source_hash: String,
    pub keywords: Vec<Keyword>,
    pub depth: usize,
    pub created_at: String,
    pub articles: Vec<ManifestArticle>,
    pub tool_version: String,
    pub wordnet_version: String,
}

/// Everything in the manifest except the article list.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestFields {
    pub rs_source_hash: String,
    pub keywords: Vec<Keyword>,
    pub depth: usize,
    pub created_at: String,
    pub tool_version: String,
    pub wordnet_version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// RFC 3339 UTC timestamp. Honours `SOURCE_DATE_EPOCH` so repeated runs can
/// produce identical manifests.
pub fn creation_timestamp() -> String {
    let epoch = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0));
    epoch
        .unwrap_or_else(chrono::Utc::now)
        .to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn article_relative_path(page_id: u64) -> String {
    format!("{ARTICLES_DIR}/{page_id}.txt")
}

fn write_atomic(dir: &Path, target: &Path, bytes: &[u8]) -> Result<(), CorpusError> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(bytes).map_err(io_err(tmp.path()))?;
    tmp.persist(target).map_err(|e| CorpusError::Io {
        path: target.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

/// Writes one file per article and then the manifest. Article files left
/// over from an earlier run into the same directory are removed.
pub fn write_corpus(
    articles: &[(ArticleRef, String)],
    fields: ManifestFields,
    out_dir: &Path,
) -> Result<CorpusManifest, CorpusError> {
    let mut seen = BTreeSet::new();
    for (a, _) in articles {
        if !seen.insert(a.page_id) {
            return Err(CorpusError::DuplicatePageId(a.page_id));
        }
    }
    let article_dir = out_dir.join(ARTICLES_DIR);
    fs::create_dir_all(&article_dir).map_err(io_err(&article_dir))?;

    let mut entries = Vec::with_capacity(articles.len());
    for (a, text) in articles {
        let relative_path = article_relative_path(a.page_id);
        let path = out_dir.join(&relative_path);
        write_atomic(&article_dir, &path, text.as_bytes())?;
        entries.push(ManifestArticle {
            page_id: a.page_id,
            title: a.title.clone(),
            byte_length: text.len() as u64,
            relative_path,
        });
    }
    entries.sort_by_key(|e| e.page_id);

    for entry in fs::read_dir(&article_dir).map_err(io_err(&article_dir))? {
        let path = entry.map_err(io_err(&article_dir))?.path();
        let stale = path
            .file_stem()
            .and_then(|s| s.to_str())
            .and_then(|s| s.parse::<u64>().ok())
            .is_some_and(|id| !seen.contains(&id));
        if stale && path.extension().is_some_and(|e| e == "txt") {
            fs::remove_file(&path).map_err(io_err(&path))?;
        }
    }

    let manifest = CorpusManifest {
        rs_source_hash: fields.rs_source_hash,
        keywords: fields.keywords,
        depth: fields.depth,
        created_at: fields.created_at,
        articles: entries,
        tool_version: fields.tool_version,
        wordnet_version: fields.wordnet_version,
    };
    let mut json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    json.push(b'\n');
    write_atomic(out_dir, &out_dir.join(MANIFEST_FILE), &json)?;
    Ok(manifest)
}

/// A validated corpus directory.
#[derive(Debug, Clone)]
pub struct Corpus {
    dir: PathBuf,
    manifest: CorpusManifest,
}

fn is_contained(relative: &str) -> bool {
    let p = Path::new(relative);
    !relative.is_empty() && p.components().all(|c| matches!(c, Component::Normal(_)))
}

/// Reads the manifest and checks that every listed file exists with the
/// recorded length and that page ids are unique.
pub fn load_corpus(dir: &Path) -> Result<Corpus, CorpusError> {
    let manifest_path = dir.join(MANIFEST_FILE);
    if !manifest_path.is_file() {
        return Err(CorpusError::ManifestMissing(manifest_path));
    }
    let raw = fs::read(&manifest_path).map_err(io_err(&manifest_path))?;
    let manifest: CorpusManifest =
        serde_json::from_slice(&raw).map_err(|e| CorpusError::MalformedManifest {
            path: manifest_path.clone(),
            reason: e.to_string(),
        })?;
    let mut seen = BTreeSet::new();
    for a in &manifest.articles {
        if !seen.insert(a.page_id) {
            return Err(CorpusError::DuplicatePageId(a.page_id));
        }
        let path = dir.join(&a.relative_path);
        if !is_contained(&a.relative_path) {
            return Err(CorpusError::Integrity {
                path,
                reason: "path escapes the corpus directory".into(),
            });
        }
        let len = match fs::metadata(&path) {
            Ok(m) if m.is_file() => m.len(),
            _ => {
                return Err(CorpusError::Integrity {
                    path,
                    reason: "file is missing".into(),
                })
            }
        };
        if len != a.byte_length {
            return Err(CorpusError::Integrity {
                path,
                reason: format!("expected {} bytes, found {len}", a.byte_length),
            });
        }
    }
    Ok(Corpus {
        dir: dir.to_path_buf(),
        manifest,
    })
}

impl Corpus {
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn manifest(&self) -> &CorpusManifest {
        &self.manifest
    }

    pub fn len(&self) -> usize {
        self.manifest.articles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.manifest.articles.is_empty()
    }

    pub fn read_article(&self, entry: &ManifestArticle) -> Result<String, CorpusError> {
        let path = self.dir.join(&entry.relative_path);
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        if bytes.len() as u64 != entry.byte_length {
            return Err(CorpusError::Integrity {
                path,
                reason: format!(
                    "expected {} bytes, found {}",
                    entry.byte_length,
                    bytes.len()
                ),
            });
        }
        String::from_utf8(bytes).map_err(|e| CorpusError::Integrity {
            path,
            reason: format!("not UTF-8: {e}"),
        })
    }

    /// `(page_id, text)` in manifest order.
    pub fn texts(&self) -> impl Iterator<Item = Result<(u64, String), CorpusError>> + '_ {
        self.manifest
            .articles
            .iter()
            .map(|a| self.read_article(a).map(|t| (a.page_id, t)))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FrequencyReport {
    /// Count descending, then term ascending.
    pub entries: Vec<(String, u64)>,
    /// Tokens counted across the whole corpus, before truncation to top_n.
    pub retained_tokens: u64,
}

impl FrequencyReport {
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (term, count) in &self.entries {
            writeln!(out, "{term}\t{count}")?;
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(t, _)| t.as_str())
    }
}

fn counts_as_term(lemma: &str, pos: Pos, is_stopword: bool) -> bool {
    !is_stopword
        && !matches!(pos, Pos::Punct | Pos::Num)
        && lemma.chars().count() > 1
        && lemma.chars().any(char::is_alphabetic)
        && !lemma.chars().all(|c| c.is_ascii_digit())
}

/// Lemma counts over texts, without stopwords, punctuation, numbers and
/// one-character terms.
pub fn frequency_report_texts<'a>(
    texts: impl IntoIterator<Item = &'a str>,
    pipeline: &Pipeline,
    top_n: usize,
) -> FrequencyReport {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut retained = 0u64;
    for (i, text) in texts.into_iter().enumerate() {
        let doc = pipeline.process(text, &format!("article-{i}"));
        for t in doc.sentences.iter().flat_map(|s| &s.tokens) {
            let lemma = t.lemma.to_lowercase();
            if counts_as_term(
                &lemma,
                t.pos,
                t.is_stopword || pipeline.stopwords().contains(&lemma),
            ) {
                *counts.entry(lemma).or_default() += 1;
                retained += 1;
            }
        }
    }
    let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries.truncate(top_n);
    FrequencyReport {
        entries,
        retained_tokens: retained,
    }
}

pub fn frequency_report(
    corpus: &Corpus,
    pipeline: &Pipeline,
    top_n: usize,
) -> Result<FrequencyReport, CorpusError> {
    let texts: Vec<String> = corpus
        .texts()
        .map(|r| r.map(|(_, t)| t))
        .collect::<Result<_, _>>()?;
    Ok(frequency_report_texts(
        texts.iter().map(String::as_str),
        pipeline,
        top_n,
    ))
}
