//! In-memory MediaWiki that answers the subset of Action API queries issued by
//! [`WikiClient`](super::WikiClient). Used to build recorded fixtures and to
//! test the crawler on generated graphs.
//!
//! Membership is declared on the member, as on a real wiki: every page lists
//! the categories it belongs to, and a category page lists its parents.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use url::Url;

use super::{CrawlError, Fetcher, CATEGORY_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimPage {
    pub id: u64,
    pub title: String,
    #[serde(default)]
    pub ns: i64,
    #[serde(default)]
    pub text: String,
    /// Full category titles, `Category:` prefix included.
    #[serde(default)]
    pub categories: Vec<String>,
    #[serde(default)]
    pub hidden: bool,
    #[serde(default)]
    pub disambiguation: bool,
    #[serde(default)]
    pub redirect_to: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WikiGraph {
    pub pages: Vec<SimPage>,
}

impl WikiGraph {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CrawlError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| CrawlError::Cache {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&raw).map_err(|e| CrawlError::MalformedResponse {
            url: path.display().to_string(),
            reason: e.to_string(),
        })
    }
}

pub struct SimulatedWiki {
    pages: BTreeMap<u64, SimPage>,
    by_title: HashMap<String, u64>,
    /// Category title → member ids, sorted by member title.
    members: HashMap<String, Vec<u64>>,
    page_size: usize,
    requests: AtomicUsize,
}

fn words(s: &str) -> BTreeSet<String> {
    s.split(|c: char| !c.is_alphanumeric())
        .filter(|w| w.len() > 1)
        .map(str::to_lowercase)
        .collect()
}

fn api_error(code: &str, info: &str) -> Value {
    json!({"error": {"code": code, "info": info}})
}

impl SimulatedWiki {
    pub fn new(graph: WikiGraph) -> Self {
        let mut pages = BTreeMap::new();
        let mut by_title = HashMap::new();
        for p in graph.pages {
            by_title.insert(p.title.clone(), p.id);
            pages.insert(p.id, p);
        }
        let mut members: HashMap<String, Vec<u64>> = HashMap::new();
        for p in pages.values() {
            for c in &p.categories {
                members.entry(c.clone()).or_default().push(p.id);
            }
        }
        for ids in members.values_mut() {
            ids.sort_by(|a, b| pages[a].title.cmp(&pages[b].title).then(a.cmp(b)));
            ids.dedup();
        }
        SimulatedWiki {
            pages,
            by_title,
            members,
            page_size: 500,
            requests: AtomicUsize::new(0),
        }
    }

    /// Caps every list response at `n` items, forcing continuation.
    pub fn with_page_size(mut self, n: usize) -> Self {
        self.page_size = n.max(1);
        self
    }

    pub fn requests(&self) -> usize {
        self.requests.load(Ordering::SeqCst)
    }

    fn limit(&self, raw: Option<&str>) -> usize {
        match raw {
            Some("max") | None => self.page_size,
            Some(n) => n.parse::<usize>().unwrap_or(10).clamp(1, self.page_size),
        }
    }

    fn resolve(&self, id: u64, follow: bool) -> Option<&SimPage> {
        let page = self.pages.get(&id)?;
        match (follow, page.redirect_to) {
            (true, Some(target)) => self.pages.get(&target),
            _ => Some(page),
        }
    }

    fn page_json(p: &SimPage) -> Value {
        json!({"pageid": p.id, "ns": p.ns, "title": p.title})
    }

    fn search(&self, q: &HashMap<String, String>) -> Value {
        let query = words(q.get("gsrsearch").map(String::as_str).unwrap_or_default());
        let limit = self.limit(q.get("gsrlimit").map(String::as_str));
        let mut scored: Vec<(usize, &SimPage)> = self
            .pages
            .values()
            .filter(|p| p.ns == 0 && p.redirect_to.is_none())
            .filter_map(|p| {
                let title_hits = query.intersection(&words(&p.title)).count();
                let text_hits = query.intersection(&words(&p.text)).count();
                let score = 3 * title_hits + text_hits;
                (score > 0).then_some((score, p))
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.id.cmp(&b.1.id)));
        scored.truncate(limit);
        if scored.is_empty() {
            return json!({"batchcomplete": true});
        }
        let pages: Vec<Value> = scored
            .iter()
            .enumerate()
            .map(|(rank, (_, p))| {
                let mut v = Self::page_json(p);
                v["index"] = json!(rank + 1);
                if p.disambiguation {
                    v["pageprops"] = json!({"disambiguation": ""});
                }
                v
            })
            .collect();
        json!({"batchcomplete": true, "query": {"pages": pages}})
    }

    fn offset(q: &HashMap<String, String>, key: &str) -> usize {
        q.get(key).and_then(|s| s.parse().ok()).unwrap_or(0)
    }

    fn categories(&self, q: &HashMap<String, String>) -> Value {
        let Some(page) = q
            .get("pageids")
            .and_then(|s| s.parse().ok())
            .and_then(|id| self.pages.get(&id))
        else {
            return json!({"batchcomplete": true});
        };
        let skip_hidden = q.get("gclshow").is_some_and(|s| s == "!hidden");
        let mut titles: Vec<&String> = page
            .categories
            .iter()
            .filter(|t| {
                let hidden = self
                    .by_title
                    .get(*t)
                    .is_some_and(|id| self.pages[id].hidden);
                !(skip_hidden && hidden)
            })
            .collect();
        titles.sort();
        titles.dedup();
        let start = Self::offset(q, "gclcontinue");
        let limit = self.limit(q.get("gcllimit").map(String::as_str));
        let chunk: Vec<Value> = titles
            .iter()
            .skip(start)
            .take(limit)
            .map(|t| match self.by_title.get(*t) {
                Some(id) => Self::page_json(&self.pages[id]),
                None => json!({"ns": 14, "title": t, "missing": true}),
            })
            .collect();
        let mut out = json!({"query": {"pages": chunk}});
        if start + limit < titles.len() {
            out["continue"] =
                json!({"gclcontinue": (start + limit).to_string(), "continue": "gcllimit||"});
        } else {
            out["batchcomplete"] = json!(true);
        }
        out
    }

    fn category_members(&self, q: &HashMap<String, String>) -> Value {
        let Some(title) = q.get("cmtitle") else {
            return api_error("nocmtitle", "The cmtitle parameter must be set.");
        };
        if !title.starts_with(CATEGORY_PREFIX) {
            return api_error(
                "invalidcategory",
                "The category name you entered is not valid.",
            );
        }
        let types: BTreeSet<&str> = q
            .get("cmtype")
            .map(|s| s.split('|').collect())
            .unwrap_or_else(|| ["page", "subcat", "file"].into());
        let all: Vec<&SimPage> = self
            .members
            .get(title)
            .into_iter()
            .flatten()
            .map(|id| &self.pages[id])
            .filter(|p| match p.ns {
                14 => types.contains("subcat"),
                6 => types.contains("file"),
                _ => types.contains("page"),
            })
            .collect();
        let start = Self::offset(q, "cmcontinue");
        let limit = self.limit(q.get("cmlimit").map(String::as_str));
        let chunk: Vec<Value> = all
            .iter()
            .skip(start)
            .take(limit)
            .map(|p| Self::page_json(p))
            .collect();
        let mut out = json!({"query": {"categorymembers": chunk}});
        if start + limit < all.len() {
            out["continue"] = json!({"cmcontinue": (start + limit).to_string(), "continue": "-||"});
        } else {
            out["batchcomplete"] = json!(true);
        }
        out
    }

    fn extracts(&self, q: &HashMap<String, String>) -> Value {
        let Some(id) = q.get("pageids").and_then(|s| s.parse::<u64>().ok()) else {
            return api_error("badinteger", "Invalid value for pageids.");
        };
        let follow = q.contains_key("redirects");
        let page = match self.resolve(id, follow) {
            Some(p) => {
                let mut v = Self::page_json(p);
                v["extract"] = json!(if p.redirect_to.is_some() {
                    ""
                } else {
                    p.text.as_str()
                });
                v
            }
            None => json!({"pageid": id, "missing": true}),
        };
        json!({"batchcomplete": true, "query": {"pages": [page]}})
    }

    pub fn respond(&self, url: &Url) -> Value {
        let q: HashMap<String, String> = url
            .query_pairs()
            .map(|(k, v)| (k.into_owned(), v.into_owned()))
            .collect();
        if q.get("action").map(String::as_str) != Some("query") {
            return api_error("badvalue", "Unrecognized value for parameter \"action\".");
        }
        match (
            q.get("generator").map(String::as_str),
            q.get("list").map(String::as_str),
            q.get("prop").map(String::as_str),
        ) {
            (Some("search"), _, _) => self.search(&q),
            (Some("categories"), _, _) => self.categories(&q),
            (None, Some("categorymembers"), _) => self.category_members(&q),
            (None, None, Some("extracts")) => self.extracts(&q),
            _ => api_error("badvalue", "Unsupported query for the simulator."),
        }
    }
}

impl Fetcher for SimulatedWiki {
    fn fetch(&self, url: &Url) -> Result<String, CrawlError> {
        self.requests.fetch_add(1, Ordering::SeqCst);
        Ok(self.respond(url).to_string())
    }
}
