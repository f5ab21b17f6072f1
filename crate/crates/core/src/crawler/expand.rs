//! Breadth-first category expansion.
//!
//! Depth 0 keeps the seeds only. Depth `d` adds the pages of every category
//! within `d - 1` subcategory hops of a seed's categories. Each level is
//! fetched in parallel but merged in a fixed order, so the result does not
//! depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    par_map, ArticleRef, CategoryRef, CrawlConfig, CrawlError, CrawlResult, SeedMatch, WikiClient,
};

pub struct Crawler<'a> {
    client: &'a WikiClient,
    config: CrawlConfig,
}

impl<'a> Crawler<'a> {
    pub fn new(client: &'a WikiClient, config: CrawlConfig) -> Result<Self, CrawlError> {
        config.validate()?;
        Ok(Crawler { client, config })
    }

    pub fn config(&self) -> &CrawlConfig {
        &self.config
    }

    /// Searches every keyword, in order. Keywords without a match keep an
    /// empty slot.
    pub fn find_seeds(&self, keywords: &[String]) -> Result<Vec<SeedMatch>, CrawlError> {
        let found = par_map(keywords, self.config.workers, |k| {
            self.client.search_article(k)
        })?;
        Ok(keywords
            .iter()
            .zip(found)
            .map(|(keyword, article)| SeedMatch {
                keyword: keyword.clone(),
                article,
            })
            .collect())
    }

    /// Search plus expansion.
    pub fn crawl(&self, keywords: &[String]) -> Result<CrawlResult, CrawlError> {
        let seeds = self.find_seeds(keywords)?;
        let mut unique: Vec<ArticleRef> = Vec::new();
        let mut seen = BTreeSet::new();
        for article in seeds.iter().filter_map(|s| s.article.as_ref()) {
            if seen.insert(article.page_id) {
                unique.push(article.clone());
            }
        }
        let mut result = self.expand(&unique)?;
        result.seeds = seeds;
        Ok(result)
    }

    pub fn expand(&self, seeds: &[ArticleRef]) -> Result<CrawlResult, CrawlError> {
        let workers = self.config.workers;
        let mut articles: BTreeMap<u64, ArticleRef> = BTreeMap::new();
        for seed in seeds {
            articles.entry(seed.page_id).or_insert_with(|| seed.clone());
        }
        let mut truncated = false;

        if self.config.depth > 0 {
            let mut visited: BTreeSet<u64> = BTreeSet::new();
            let mut level: Vec<CategoryRef> = Vec::new();
            for cats in par_map(seeds, workers, |s| self.client.list_categories(s))? {
                for cat in cats {
                    if visited.insert(cat.page_id) {
                        level.push(cat);
                    }
                }
            }

            'levels: for hop in 0..self.config.depth {
                if level.is_empty() {
                    break;
                }
                log::info!("depth {}: {} categories", hop + 1, level.len());
                let members = par_map(&level, workers, |c| self.client.list_category_members(c))?;
                let descend = hop + 1 < self.config.depth;
                let mut next = Vec::new();
                for (pages, subcats) in members {
                    for page in pages {
                        if articles.contains_key(&page.page_id) {
                            continue;
                        }
                        if articles.len() >= self.config.max_articles {
                            truncated = true;
                            break 'levels;
                        }
                        articles.insert(page.page_id, page);
                    }
                    if descend {
                        for sub in subcats {
                            if visited.insert(sub.page_id) {
                                next.push(sub);
                            }
                        }
                    }
                }
                level = next;
            }
        }

        Ok(CrawlResult {
            seeds: seeds
                .iter()
                .map(|a| SeedMatch {
                    keyword: a.title.clone(),
                    article: Some(a.clone()),
                })
                .collect(),
            articles: articles.into_values().collect(),
            frontier_truncated: truncated,
        })
    }

    /// Extract text for each article, in input order.
    pub fn fetch_texts(&self, articles: &[ArticleRef]) -> Result<Vec<String>, CrawlError> {
        par_map(articles, self.config.workers, |a| {
            self.client.fetch_article_text(a)
        })
    }
}
