//! Response sources: live HTTP with retries and spacing, and an on-disk cache
//! keyed by canonical request URL.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};
use url::Url;

use super::CrawlError;

/// Anything that can answer a GET for an API URL with a response body.
pub trait Fetcher: Send + Sync {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError>;
}

impl<F: Fetcher + ?Sized> Fetcher for std::sync::Arc<F> {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError> {
        (**self).fetch(url)
    }
}

impl<F: Fetcher + ?Sized> Fetcher for Box<F> {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError> {
        (**self).fetch(url)
    }
}

/// The URL with its query pairs sorted, so parameter order never changes the
/// cache key.
pub fn canonical_url(url: &Url) -> String {
    let mut pairs: Vec<(String, String)> = url
        .query_pairs()
        .map(|(k, v)| (k.into_owned(), v.into_owned()))
        .collect();
    pairs.sort();
    let mut canonical = url.clone();
    canonical.set_fragment(None);
    if pairs.is_empty() {
        canonical.set_query(None);
    } else {
        canonical.query_pairs_mut().clear().extend_pairs(pairs);
    }
    canonical.to_string()
}

/// `<cache_dir>/<sha256(canonical url)>.json`
pub fn cache_path(cache_dir: &Path, url: &Url) -> PathBuf {
    let digest = Sha256::digest(canonical_url(url).as_bytes());
    cache_dir.join(format!("{}.json", hex::encode(digest)))
}

/// Disk cache in front of an optional live fetcher. Without one (offline mode)
/// every miss is an error.
pub struct CachedFetcher {
    dir: PathBuf,
    inner: Option<Box<dyn Fetcher>>,
}

impl CachedFetcher {
    pub fn new(dir: impl Into<PathBuf>, inner: Box<dyn Fetcher>) -> Self {
        CachedFetcher {
            dir: dir.into(),
            inner: Some(inner),
        }
    }

    pub fn offline(dir: impl Into<PathBuf>) -> Self {
        CachedFetcher {
            dir: dir.into(),
            inner: None,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn store(&self, path: &Path, body: &str) -> Result<(), CrawlError> {
        let io = |source| CrawlError::Cache {
            path: path.to_path_buf(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(body.as_bytes()).map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

impl Fetcher for CachedFetcher {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError> {
        let path = cache_path(&self.dir, url);
        if path.is_file() {
            return fs::read_to_string(&path).map_err(|source| CrawlError::Cache { path, source });
        }
        let Some(inner) = &self.inner else {
            return Err(CrawlError::CacheMiss {
                url: canonical_url(url),
            });
        };
        let body = inner.fetch(url)?;
        self.store(&path, &body)?;
        Ok(body)
    }
}

/// Raw HTTP exchange: status and body, or a transport-level failure message.
pub trait Transport: Send + Sync {
    fn get(&self, url: &Url) -> Result<(u16, String), String>;
}

pub struct ReqwestTransport {
    client: reqwest::blocking::Client,
}

impl ReqwestTransport {
    pub fn new(user_agent: &str) -> Result<Self, CrawlError> {
        let client = reqwest::blocking::Client::builder()
            .user_agent(user_agent)
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| CrawlError::Network {
                url: String::new(),
                message: e.to_string(),
            })?;
        Ok(ReqwestTransport { client })
    }
}

impl Transport for ReqwestTransport {
    fn get(&self, url: &Url) -> Result<(u16, String), String> {
        let resp = self
            .client
            .get(url.as_str())
            .send()
            .map_err(|e| e.to_string())?;
        let status = resp.status().as_u16();
        let body = resp.text().map_err(|e| e.to_string())?;
        Ok((status, body))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub attempts: u32,
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            attempts: 3,
            base_delay: Duration::from_millis(500),
        }
    }
}

/// Live fetcher. Requests are spaced at least `request_delay` apart, and
/// transport errors or 5xx responses are retried with exponential backoff.
pub struct HttpFetcher<T = ReqwestTransport> {
    transport: T,
    retry: RetryPolicy,
    request_delay: Duration,
    last_request: Mutex<Option<Instant>>,
}

impl HttpFetcher<ReqwestTransport> {
    pub fn new(user_agent: &str, request_delay: Duration) -> Result<Self, CrawlError> {
        Ok(Self::with_transport(
            ReqwestTransport::new(user_agent)?,
            RetryPolicy::default(),
            request_delay,
        ))
    }
}

impl<T: Transport> HttpFetcher<T> {
    pub fn with_transport(transport: T, retry: RetryPolicy, request_delay: Duration) -> Self {
        HttpFetcher {
            transport,
            retry,
            request_delay,
            last_request: Mutex::new(None),
        }
    }

    fn wait_turn(&self) {
        let mut last = self.last_request.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(prev) = *last {
            let ready = prev + self.request_delay;
            let now = Instant::now();
            if ready > now {
                thread::sleep(ready - now);
            }
        }
        *last = Some(Instant::now());
    }
}

impl<T: Transport> Fetcher for HttpFetcher<T> {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError> {
        let attempts = self.retry.attempts.max(1);
        let mut last_error = None;
        for attempt in 0..attempts {
            if attempt > 0 {
                let backoff = self.retry.base_delay * 2u32.pow(attempt - 1);
                log::warn!("retrying {url} in {backoff:?} (attempt {})", attempt + 1);
                thread::sleep(backoff);
            }
            self.wait_turn();
            match self.transport.get(url) {
                Ok((status, body)) if (200..300).contains(&status) => return Ok(body),
                Ok((status, _)) if status >= 500 => {
                    last_error = Some(format!("HTTP {status}"));
                }
                Ok((status, _)) => {
                    return Err(CrawlError::Http {
                        url: url.to_string(),
                        status,
                    })
                }
                Err(message) => last_error = Some(message),
            }
        }
        Err(CrawlError::Network {
            url: url.to_string(),
            message: last_error.unwrap_or_default(),
        })
    }
}
