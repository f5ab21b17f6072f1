//! MediaWiki crawling: keyword search, category listing and breadth-first
//! category expansion, all through a pluggable [`Fetcher`].

mod api;
mod expand;
mod fetch;
mod pool;
pub mod sim;

use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use api::{TitleMatcher, WikiClient};
pub use expand::Crawler;
pub use fetch::{
    cache_path, canonical_url, CachedFetcher, Fetcher, HttpFetcher, ReqwestTransport, RetryPolicy,
    Transport,
};
pub use pool::par_map;

pub const DEFAULT_ENDPOINT: &str = "https://en.wikipedia.org/w/api.php";
pub const DEFAULT_USER_AGENT: &str = concat!(
    "wikicorpus/",
    env!("CARGO_PKG_VERSION"),
    " (corpus builder; contact via repository)"
);
pub const CATEGORY_PREFIX: &str = "Category:";

#[derive(Debug, Error)]
pub enum CrawlError {
    #[error("network failure for {url}: {message}")]
    Network { url: String, message: String },
    #[error("HTTP {status} for {url}")]
    Http { url: String, status: u16 },
    #[error("API error {code}: {info}")]
    Api { code: String, info: String },
    #[error("malformed API response for {url}: {reason}")]
    MalformedResponse { url: String, reason: String },
    #[error("page {page_id} is missing")]
    PageMissing { page_id: u64 },
    #[error("offline mode: no cached response for {url}")]
    CacheMiss { url: String },
    #[error("cache file {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid crawl configuration: {0}")]
    InvalidConfig(String),
}

impl CrawlError {
    /// Transport-level failures worth retrying at a higher level.
    pub fn is_retryable(&self) -> bool {
        matches!(self, CrawlError::Network { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArticleRef {
    pub title: String,
    pub page_id: u64,
    pub namespace: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CategoryRef {
    /// Includes the `Category:` prefix.
    pub title: String,
    pub page_id: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedMatch {
    pub keyword: String,
    pub article: Option<ArticleRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrawlResult {
    pub seeds: Vec<SeedMatch>,
    /// Sorted by page id, no duplicates.
    pub articles: Vec<ArticleRef>,
    pub frontier_truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrawlConfig {
    pub depth: usize,
    pub max_articles: usize,
    pub request_delay_ms: u64,
    pub cache_dir: Option<PathBuf>,
    pub user_agent: String,
    pub workers: usize,
    /// Minimum shared content tokens for a search hit to count as a match.
    pub min_title_overlap: usize,
}

impl Default for CrawlConfig {
    fn default() -> Self {
        CrawlConfig {
            depth: 1,
            max_articles: 5000,
            request_delay_ms: 100,
            cache_dir: None,
            user_agent: DEFAULT_USER_AGENT.to_string(),
            workers: 4,
            min_title_overlap: 1,
        }
    }
}

impl CrawlConfig {
    pub fn validate(&self) -> Result<(), CrawlError> {
        if self.max_articles == 0 {
            return Err(CrawlError::InvalidConfig(
                "max_articles must be at least 1".into(),
            ));
        }
        if self.workers == 0 {
            return Err(CrawlError::InvalidConfig(
                "workers must be at least 1".into(),
            ));
        }
        if self.min_title_overlap == 0 {
            return Err(CrawlError::InvalidConfig(
                "min_title_overlap must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn request_delay(&self) -> Duration {
        Duration::from_millis(self.request_delay_ms)
    }
}
