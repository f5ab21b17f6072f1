//! Command implementations behind the `wikicorpus` binary. Each command writes
//! its data output to the given writer; diagnostics go through `log`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;
use url::Url;

use wikicorpus::corpus::{self, ManifestFields};
use wikicorpus::crawler::{
    CachedFetcher, CrawlConfig, CrawlResult, Crawler, Fetcher, HttpFetcher, TitleMatcher,
    WikiClient,
};
use wikicorpus::keywords::{self, KeywordConfig};
use wikicorpus::relatedness;
use wikicorpus::{EmbeddingTable, Keyword, Pipeline, RelatednessReport, WordnetLexicon};

pub use wikicorpus::crawler::{DEFAULT_ENDPOINT, DEFAULT_USER_AGENT};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or unusable inputs; exit status 2.
    #[error("{0}")]
    Config(String),
    /// A stage failed while running; exit status 1.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn write_out(e: std::io::Error) -> CliError {
    CliError::Runtime(format!("writing output: {e}"))
}

/// Inputs shared by `mine` and `keywords`.
#[derive(Debug, Clone)]
pub struct KeywordArgs {
    pub input: PathBuf,
    pub top_k: usize,
    pub wordnet: PathBuf,
    pub background: Vec<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct MineArgs {
    pub keywords: KeywordArgs,
    pub out: PathBuf,
    pub depth: usize,
    pub offline: bool,
    /// Defaults to `<out>/.http-cache`.
    pub cache: Option<PathBuf>,
    pub max_articles: usize,
    pub endpoint: String,
    pub user_agent: String,
    pub workers: usize,
    pub request_delay_ms: u64,
}

#[derive(Debug, Clone)]
pub struct EvalArgs {
    pub corpus: PathBuf,
    /// Test documents; their texts are joined into one document.
    pub input: Vec<PathBuf>,
    pub vectors: PathBuf,
}

#[derive(Debug, Clone)]
pub struct ReportArgs {
    pub corpus: PathBuf,
    pub top_n: usize,
    pub wordnet: Option<PathBuf>,
}

fn read_text(path: &Path, flag: &str) -> Result<String, CliError> {
    let bytes =
        fs::read(path).map_err(|e| CliError::Config(format!("{flag} {}: {e}", path.display())))?;
    String::from_utf8(bytes).map_err(|e| {
        CliError::Runtime(format!(
            "{}: not valid UTF-8 (first bad byte at offset {})",
            path.display(),
            e.utf8_error().valid_up_to()
        ))
    })
}

fn load_lexicon(dir: &Path) -> Result<Arc<WordnetLexicon>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Config(format!(
            "--wordnet {}: not a directory",
            dir.display()
        )));
    }
    let lexicon =
        WordnetLexicon::load(dir).map_err(|e| CliError::Config(format!("--wordnet: {e}")))?;
    log::info!(
        "WordNet: {} lemmas ({})",
        lexicon.len(),
        lexicon.source_version()
    );
    Ok(Arc::new(lexicon))
}

/// Keyword stage. Returns the keywords, the input bytes' digest and the
/// pipeline used, so `mine` can reuse it.
fn mine_keywords(args: &KeywordArgs) -> Result<(Vec<Keyword>, String, Pipeline), CliError> {
    if args.top_k == 0 {
        return Err(CliError::Config("--top-k must be at least 1".into()));
    }
    let lexicon = load_lexicon(&args.wordnet)?;
    let text = read_text(&args.input, "--input")?;
    let background = args
        .background
        .iter()
        .map(|p| read_text(p, "--background"))
        .collect::<Result<Vec<_>, _>>()?;
    let pipeline = Pipeline::new().with_lexicon(lexicon);
    let config = KeywordConfig {
        top_k: args.top_k,
        background_docs: background,
        wordnet_filter: true,
    };
    let keywords = keywords::extract_keywords(&pipeline, &text, &config).map_err(runtime)?;
    log::info!("{} keywords", keywords.len());
    Ok((keywords, corpus::sha256_hex(text.as_bytes()), pipeline))
}

pub fn cmd_keywords(args: &KeywordArgs, out: &mut dyn Write) -> Result<Vec<Keyword>, CliError> {
    let (keywords, _, _) = mine_keywords(args)?;
    keywords::write_keywords_tsv(&keywords, &mut *out).map_err(write_out)?;
    Ok(keywords)
}

#[derive(Debug, Clone)]
pub struct MineSummary {
    pub keywords: Vec<Keyword>,
    pub crawl: CrawlResult,
    pub manifest: corpus::CorpusManifest,
}

/// Full pipeline. `live` replaces the HTTP fetcher behind the cache, which
/// is how fixtures are recorded from a simulated wiki.
pub fn cmd_mine(
    args: &MineArgs,
    live: Option<Box<dyn Fetcher>>,
    out: &mut dyn Write,
) -> Result<MineSummary, CliError> {
    if args.max_articles == 0 {
        return Err(CliError::Config("--max-articles must be at least 1".into()));
    }
    if args.workers == 0 {
        return Err(CliError::Config("--workers must be at least 1".into()));
    }
    let endpoint =
        Url::parse(&args.endpoint).map_err(|e| CliError::Config(format!("--endpoint: {e}")))?;
    let cache_dir = args
        .cache
        .clone()
        .unwrap_or_else(|| args.out.join(".http-cache"));
    if args.offline && !cache_dir.is_dir() {
        return Err(CliError::Config(format!(
            "--offline needs an existing --cache directory, {} not found",
            cache_dir.display()
        )));
    }

    let (keywords, rs_hash, pipeline) = mine_keywords(&args.keywords)?;
    let wordnet_version = pipeline
        .lexicon()
        .map_or("unknown", WordnetLexicon::source_version)
        .to_string();

    let fetcher: Arc<dyn Fetcher> = if args.offline {
        Arc::new(CachedFetcher::offline(&cache_dir))
    } else {
        let live = match live {
            Some(f) => f,
            None => Box::new(
                HttpFetcher::new(
                    &args.user_agent,
                    std::time::Duration::from_millis(args.request_delay_ms),
                )
                .map_err(runtime)?,
            ),
        };
        Arc::new(CachedFetcher::new(&cache_dir, live))
    };
    let client = WikiClient::new(endpoint, fetcher, TitleMatcher::new(pipeline, 1));
    let config = CrawlConfig {
        depth: args.depth,
        max_articles: args.max_articles,
        request_delay_ms: args.request_delay_ms,
        cache_dir: Some(cache_dir),
        user_agent: args.user_agent.clone(),
        workers: args.workers,
        ..CrawlConfig::default()
    };
    let crawler = Crawler::new(&client, config).map_err(|e| CliError::Config(e.to_string()))?;
    let phrases: Vec<String> = keywords.iter().map(|k| k.phrase.clone()).collect();
    let crawl = crawler.crawl(&phrases).map_err(runtime)?;
    if crawl.frontier_truncated {
        log::warn!(
            "article cap of {} reached; corpus truncated",
            args.max_articles
        );
    }
    let texts = crawler.fetch_texts(&crawl.articles).map_err(runtime)?;
    let articles: Vec<_> = crawl.articles.iter().cloned().zip(texts).collect();

    let fields = ManifestFields {
        rs_source_hash: rs_hash,
        keywords: keywords.clone(),
        depth: args.depth,
        created_at: corpus::creation_timestamp(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wordnet_version,
    };
    let manifest = corpus::write_corpus(&articles, fields, &args.out).map_err(runtime)?;

    writeln!(out, "# keywords").map_err(write_out)?;
    keywords::write_keywords_tsv(&keywords, &mut *out).map_err(write_out)?;
    writeln!(out, "# seeds").map_err(write_out)?;
    for seed in &crawl.seeds {
        match &seed.article {
            Some(a) => writeln!(out, "{}\t{}\t{}", seed.keyword, a.page_id, a.title),
            None => writeln!(out, "{}\t-\t-", seed.keyword),
        }
        .map_err(write_out)?;
    }
    let matched = crawl.seeds.iter().filter(|s| s.article.is_some()).count();
    writeln!(out, "# seed matches\t{matched}").map_err(write_out)?;
    writeln!(out, "# articles\t{}", crawl.articles.len()).map_err(write_out)?;
    Ok(MineSummary {
        keywords,
        crawl,
        manifest,
    })
}

fn open_corpus(dir: &Path) -> Result<corpus::Corpus, CliError> {
    corpus::load_corpus(dir).map_err(|e| match e {
        corpus::CorpusError::ManifestMissing(_) => CliError::Config(format!("--corpus: {e}")),
        other => runtime(other),
    })
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<RelatednessReport, CliError> {
    if !args.vectors.is_file() {
        return Err(CliError::Config(format!(
            "--vectors {}: file not found",
            args.vectors.display()
        )));
    }
    if args.input.is_empty() {
        return Err(CliError::Config(
            "--input: at least one test document is required".into(),
        ));
    }
    let tests = args
        .input
        .iter()
        .map(|p| read_text(p, "--input"))
        .collect::<Result<Vec<_>, _>>()?;
    let corpus = open_corpus(&args.corpus)?;
    let table = EmbeddingTable::load(&args.vectors).map_err(runtime)?;
    let articles = corpus
        .texts()
        .collect::<Result<Vec<_>, _>>()
        .map_err(runtime)?;
    let stopwords = Pipeline::new().stopwords().clone();
    let report = relatedness::evaluate(articles, &tests.join("\n\n"), &table, &stopwords)
        .map_err(runtime)?;
    log::info!("{}", report.summary().trim_end());
    serde_json::to_writer_pretty(&mut *out, &report).map_err(runtime)?;
    writeln!(out).map_err(write_out)?;
    Ok(report)
}

pub fn cmd_report(
    args: &ReportArgs,
    out: &mut dyn Write,
) -> Result<corpus::FrequencyReport, CliError> {
    if args.top_n == 0 {
        return Err(CliError::Config("--top-n must be at least 1".into()));
    }
    let pipeline = match &args.wordnet {
        Some(dir) => Pipeline::new().with_lexicon(load_lexicon(dir)?),
        None => Pipeline::new(),
    };
    let corpus = open_corpus(&args.corpus)?;
    let report = corpus::frequency_report(&corpus, &pipeline, args.top_n).map_err(runtime)?;
    report.write_tsv(&mut *out).map_err(write_out)?;
    Ok(report)
}
