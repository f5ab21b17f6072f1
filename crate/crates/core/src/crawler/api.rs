//! Typed calls against the MediaWiki Action API (`formatversion=2` JSON).

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{Map, Value};
use url::Url;

use super::{ArticleRef, CategoryRef, CrawlError, Fetcher, CATEGORY_PREFIX};
use crate::preprocess::{Pipeline, Pos};

const ARTICLE_NS: i64 = 0;
const CATEGORY_NS: i64 = 14;
const SEARCH_LIMIT: &str = "10";
const MEMBERS_LIMIT: &str = "500";

/// Decides whether a search hit's title "partially matches" a keyword: both
/// are reduced to content tokens (lowercased, stopwords and punctuation
/// dropped, last token lemmatized as a noun) and must share enough of them.
#[derive(Clone)]
pub struct TitleMatcher {
    pipeline: Pipeline,
    min_shared: usize,
}

impl TitleMatcher {
    pub fn new(pipeline: Pipeline, min_shared: usize) -> Self {
        TitleMatcher {
            pipeline,
            min_shared: min_shared.max(1),
        }
    }

    pub fn content_tokens(&self, text: &str) -> BTreeSet<String> {
        let words: Vec<String> = self
            .pipeline
            .tokenize(text)
            .iter()
            .map(|t| t.surface(text).to_lowercase())
            .filter(|w| {
                w.chars().any(char::is_alphanumeric) && !self.pipeline.stopwords().contains(w)
            })
            .collect();
        let mut out: BTreeSet<String> = BTreeSet::new();
        if let Some((head, modifiers)) = words.split_last() {
            out.extend(modifiers.iter().cloned());
            out.insert(self.pipeline.lemmatize(head, Pos::Noun));
        }
        out
    }

    pub fn matches(&self, title: &str, keyword: &str) -> bool {
        let a = self.content_tokens(title);
        let b = self.content_tokens(keyword);
        a.intersection(&b).count() >= self.min_shared
    }
}

impl Default for TitleMatcher {
    fn default() -> Self {
        TitleMatcher::new(Pipeline::new(), 1)
    }
}

pub struct WikiClient {
    endpoint: Url,
    fetcher: Arc<dyn Fetcher>,
    matcher: TitleMatcher,
}

fn u64_field(v: &Value, key: &str) -> Option<u64> {
    v.get(key).and_then(Value::as_u64)
}

fn flag(v: &Value, key: &str) -> bool {
    // formatversion=2 uses booleans; version 1 uses empty strings.
    match v.get(key) {
        Some(Value::Bool(b)) => *b,
        Some(_) => true,
        None => false,
    }
}

impl WikiClient {
    pub fn new(endpoint: Url, fetcher: Arc<dyn Fetcher>, matcher: TitleMatcher) -> Self {
        WikiClient {
            endpoint,
            fetcher,
            matcher,
        }
    }

    pub fn matcher(&self) -> &TitleMatcher {
        &self.matcher
    }

    fn url(&self, params: &[(&str, &str)], extra: &Map<String, Value>) -> Url {
        let mut url = self.endpoint.clone();
        {
            let mut q = url.query_pairs_mut();
            q.append_pair("action", "query")
                .append_pair("format", "json")
                .append_pair("formatversion", "2");
            for (k, v) in params {
                q.append_pair(k, v);
            }
            for (k, v) in extra {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                q.append_pair(k, &v);
            }
        }
        url
    }

    fn call(&self, url: &Url) -> Result<Value, CrawlError> {
        let body = self.fetcher.fetch(url)?;
        let value: Value =
            serde_json::from_str(&body).map_err(|e| CrawlError::MalformedResponse {
                url: url.to_string(),
                reason: e.to_string(),
            })?;
        if let Some(err) = value.get("error") {
            let text = |k: &str| {
                err.get(k)
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string()
            };
            return Err(CrawlError::Api {
                code: text("code"),
                info: text("info"),
            });
        }
        Ok(value)
    }

    /// Runs a query and follows `continue` until the result set is drained.
    fn query_all(&self, params: &[(&str, &str)]) -> Result<Vec<Value>, CrawlError> {
        let mut responses = Vec::new();
        let mut cont = Map::new();
        loop {
            let url = self.url(params, &cont);
            let value = self.call(&url)?;
            let next = value.get("continue").and_then(Value::as_object).cloned();
            responses.push(value);
            match next {
                Some(next) if next != cont => cont = next,
                Some(_) => {
                    return Err(CrawlError::MalformedResponse {
                        url: url.to_string(),
                        reason: "continuation token did not advance".into(),
                    })
                }
                None => return Ok(responses),
            }
        }
    }

    fn pages(value: &Value) -> impl Iterator<Item = &Value> {
        value
            .pointer("/query/pages")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
    }

    /// Highest-ranked non-disambiguation article among the top search hits
    /// whose title overlaps the keyword.
    pub fn search_article(&self, keyword: &str) -> Result<Option<ArticleRef>, CrawlError> {
        let url = self.url(
            &[
                ("generator", "search"),
                ("gsrsearch", keyword),
                ("gsrnamespace", "0"),
                ("gsrlimit", SEARCH_LIMIT),
                ("prop", "pageprops"),
                ("ppprop", "disambiguation"),
                ("redirects", "1"),
            ],
            &Map::new(),
        );
        let value = self.call(&url)?;
        let mut hits: Vec<&Value> = Self::pages(&value).collect();
        hits.sort_by_key(|p| u64_field(p, "index").unwrap_or(u64::MAX));
        for page in hits {
            let (Some(page_id), Some(title)) = (
                u64_field(page, "pageid"),
                page.get("title").and_then(Value::as_str),
            ) else {
                continue;
            };
            let ns = page.get("ns").and_then(Value::as_i64).unwrap_or(ARTICLE_NS);
            let disambiguation = page
                .get("pageprops")
                .is_some_and(|pp| flag(pp, "disambiguation"));
            if ns != ARTICLE_NS || disambiguation || flag(page, "missing") {
                continue;
            }
            if self.matcher.matches(title, keyword) {
                return Ok(Some(ArticleRef {
                    title: title.to_string(),
                    page_id,
                    namespace: ns,
                }));
            }
        }
        Ok(None)
    }

    /// Non-hidden categories of an article, sorted by title. Categories
    /// without a category page have no page id and are skipped.
    pub fn list_categories(&self, article: &ArticleRef) -> Result<Vec<CategoryRef>, CrawlError> {
        let id = article.page_id.to_string();
        let responses = self.query_all(&[
            ("generator", "categories"),
            ("pageids", &id),
            ("gclshow", "!hidden"),
            ("gcllimit", "max"),
        ])?;
        let mut cats: Vec<CategoryRef> = responses
            .iter()
            .flat_map(Self::pages)
            .filter(|p| !flag(p, "missing"))
            .filter_map(|p| {
                let title = p.get("title")?.as_str()?;
                Some(CategoryRef {
                    title: title.to_string(),
                    page_id: u64_field(p, "pageid")?,
                })
            })
            .filter(|c| c.title.starts_with(CATEGORY_PREFIX))
            .collect();
        cats.sort();
        cats.dedup();
        Ok(cats)
    }

    /// Article pages and subcategories of a category, in API order. Members
    /// from other namespaces (files, portals, templates) are dropped.
    pub fn list_category_members(
        &self,
        category: &CategoryRef,
    ) -> Result<(Vec<ArticleRef>, Vec<CategoryRef>), CrawlError> {
        let responses = self.query_all(&[
            ("list", "categorymembers"),
            ("cmtitle", &category.title),
            ("cmtype", "page|subcat"),
            ("cmprop", "ids|title"),
            ("cmlimit", MEMBERS_LIMIT),
        ])?;
        let mut pages = Vec::new();
        let mut subcats = Vec::new();
        for member in responses
            .iter()
            .filter_map(|v| {
                v.pointer("/query/categorymembers")
                    .and_then(Value::as_array)
            })
            .flatten()
        {
            let (Some(page_id), Some(title), Some(ns)) = (
                u64_field(member, "pageid"),
                member.get("title").and_then(Value::as_str),
                member.get("ns").and_then(Value::as_i64),
            ) else {
                continue;
            };
            match ns {
                ARTICLE_NS => pages.push(ArticleRef {
                    title: title.to_string(),
                    page_id,
                    namespace: ns,
                }),
                CATEGORY_NS => subcats.push(CategoryRef {
                    title: title.to_string(),
                    page_id,
                }),
                _ => {}
            }
        }
        Ok((pages, subcats))
    }

    /// Plain-text extract, following one redirect. Pages without an extract
    /// yield an empty string.
    pub fn fetch_article_text(&self, article: &ArticleRef) -> Result<String, CrawlError> {
        let id = article.page_id.to_string();
        let url = self.url(
            &[
                ("prop", "extracts"),
                ("explaintext", "1"),
                ("exsectionformat", "plain"),
                ("exlimit", "1"),
                ("pageids", &id),
                ("redirects", "1"),
            ],
            &Map::new(),
        );
        let value = self.call(&url)?;
        let page = Self::pages(&value)
            .next()
            .ok_or_else(|| CrawlError::MalformedResponse {
                url: url.to_string(),
                reason: "no pages in extract response".into(),
            })?;
        if flag(page, "missing") || flag(page, "invalid") {
            return Err(CrawlError::PageMissing {
                page_id: article.page_id,
            });
        }
        Ok(page
            .get("extract")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn title_overlap_examples() {
        let m = TitleMatcher::default();
        assert!(m.matches("Rail transport", "efficiency of rail transport"));
        assert!(m.matches("Rail transport", "rail transport"));
        assert!(!m.matches("Pocket wagon", "emergency brake"));
        assert!(!m.matches("The", "of the"));
    }

    #[test]
    fn threshold_is_configurable() {
        let m = TitleMatcher::new(Pipeline::new(), 2);
        assert!(m.matches("Rail transport", "efficiency of rail transport"));
        assert!(!m.matches("Rail yard", "rail transport"));
    }

    #[test]
    fn content_tokens_drop_stopwords_and_punctuation() {
        let m = TitleMatcher::default();
        let t: Vec<String> = m
            .content_tokens("The Efficiency of (rail) transport")
            .into_iter()
            .collect();
        assert_eq!(t, ["efficiency", "rail", "transport"]);
    }
}
