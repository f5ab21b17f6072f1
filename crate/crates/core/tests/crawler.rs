use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use url::Url;

use wikicorpus::crawler::sim::{SimPage, SimulatedWiki, WikiGraph};
use wikicorpus::crawler::{
    ArticleRef, CachedFetcher, CategoryRef, CrawlConfig, CrawlError, Crawler, Fetcher,
    TitleMatcher, WikiClient,
};

fn page(id: u64, title: &str, cats: &[&str]) -> SimPage {
    SimPage {
        id,
        title: title.into(),
        ns: 0,
        text: format!("{title} article text."),
        categories: cats.iter().map(|c| format!("Category:{c}")).collect(),
        hidden: false,
        disambiguation: false,
        redirect_to: None,
    }
}

fn category(id: u64, name: &str, parents: &[&str]) -> SimPage {
    SimPage {
        ns: 14,
        text: String::new(),
        ..page(id, &format!("Category:{name}"), parents)
    }
}

fn client(wiki: Arc<dyn Fetcher>) -> WikiClient {
    WikiClient::new(
        Url::parse("https://sim.invalid/w/api.php").unwrap(),
        wiki,
        TitleMatcher::default(),
    )
}

fn article(id: u64, title: &str) -> ArticleRef {
    ArticleRef {
        title: title.into(),
        page_id: id,
        namespace: 0,
    }
}

fn config(depth: usize) -> CrawlConfig {
    CrawlConfig {
        depth,
        request_delay_ms: 0,
        ..CrawlConfig::default()
    }
}

/// Rail transport → {Locomotives, Rail yards}; Locomotives → {Steam
/// locomotives}; Steam locomotives → Rail transport (cycle).
fn small_graph() -> WikiGraph {
    let mut hidden = category(90, "Articles with short description", &[]);
    hidden.hidden = true;
    let mut disamb = page(5, "Rail (disambiguation)", &[]);
    disamb.disambiguation = true;
    disamb.text = "Rail transport may refer to many things.".into();
    let mut redirect = page(6, "Railway transport", &[]);
    redirect.redirect_to = Some(1);
    let mut portal = page(7, "Portal:Trains", &["Rail transport"]);
    portal.ns = 100;
    WikiGraph {
        pages: vec![
            page(
                1,
                "Rail transport",
                &["Rail transport", "Articles with short description"],
            ),
            page(2, "Pocket wagon", &["Rail transport"]),
            page(3, "Bi-directional vehicle", &["Rail transport"]),
            page(4, "Steam locomotive", &["Steam locomotives", "Locomotives"]),
            disamb,
            redirect,
            portal,
            page(8, "Classification yard", &["Rail yards"]),
            page(9, "Only hidden", &["Articles with short description"]),
            page(10, "Tank engine", &["Steam locomotives"]),
            category(100, "Rail transport", &["Steam locomotives"]),
            category(101, "Locomotives", &["Rail transport"]),
            category(102, "Rail yards", &["Rail transport"]),
            category(103, "Steam locomotives", &["Locomotives"]),
            category(104, "Empty", &[]),
            hidden,
        ],
    }
}

fn ids(r: &[ArticleRef]) -> Vec<u64> {
    r.iter().map(|a| a.page_id).collect()
}

#[test]
fn search_skips_disambiguation_and_checks_overlap() {
    let wiki = Arc::new(SimulatedWiki::new(small_graph()));
    let c = client(wiki);
    assert_eq!(
        c.search_article("rail transport").unwrap(),
        Some(article(1, "Rail transport"))
    );
    assert_eq!(
        c.search_article("efficiency of rail transport").unwrap(),
        Some(article(1, "Rail transport"))
    );
    assert_eq!(c.search_article("zzqx-nonexistent-phrase").unwrap(), None);
}

#[test]
fn categories_exclude_hidden() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let cats = c.list_categories(&article(1, "Rail transport")).unwrap();
    assert_eq!(
        cats,
        [CategoryRef {
            title: "Category:Rail transport".into(),
            page_id: 100
        }]
    );
    assert!(c
        .list_categories(&article(9, "Only hidden"))
        .unwrap()
        .is_empty());
}

#[test]
fn members_split_pages_and_subcats_across_pages() {
    let c = client(Arc::new(
        SimulatedWiki::new(small_graph()).with_page_size(1),
    ));
    let cat = CategoryRef {
        title: "Category:Rail transport".into(),
        page_id: 100,
    };
    let (pages, subcats) = c.list_category_members(&cat).unwrap();
    assert_eq!(ids(&pages), [3, 2, 1]);
    let names: Vec<&str> = subcats.iter().map(|s| s.title.as_str()).collect();
    assert_eq!(names, ["Category:Locomotives", "Category:Rail yards"]);
    let empty = CategoryRef {
        title: "Category:Empty".into(),
        page_id: 104,
    };
    assert_eq!(c.list_category_members(&empty).unwrap(), (vec![], vec![]));
}

#[test]
fn extracts_follow_redirects_and_report_missing() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let text = c.fetch_article_text(&article(1, "Rail transport")).unwrap();
    assert!(text.to_lowercase().contains("rail"));
    assert_eq!(
        c.fetch_article_text(&article(6, "Railway transport"))
            .unwrap(),
        text
    );
    assert!(matches!(
        c.fetch_article_text(&article(999, "Nope")),
        Err(CrawlError::PageMissing { page_id: 999 })
    ));
}

#[test]
fn api_errors_carry_server_message() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let bad = CategoryRef {
        title: "Rail transport".into(),
        page_id: 1,
    };
    match c.list_category_members(&bad) {
        Err(CrawlError::Api { code, info }) => {
            assert_eq!(code, "invalidcategory");
            assert!(!info.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn depth_levels_on_cyclic_graph() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let seeds = [article(1, "Rail transport")];
    let at = |d| {
        ids(&Crawler::new(&c, config(d))
            .unwrap()
            .expand(&seeds)
            .unwrap()
            .articles)
    };
    assert_eq!(at(0), [1]);
    assert_eq!(at(1), [1, 2, 3]);
    assert_eq!(at(2), [1, 2, 3, 4, 8]);
    assert_eq!(at(3), [1, 2, 3, 4, 8, 10]);
    assert_eq!(at(10), [1, 2, 3, 4, 8, 10]);
}

#[test]
fn cap_sets_truncation_but_keeps_seeds() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let cfg = CrawlConfig {
        max_articles: 2,
        ..config(3)
    };
    let r = Crawler::new(&c, cfg)
        .unwrap()
        .expand(&[article(1, "Rail transport")])
        .unwrap();
    assert!(r.frontier_truncated);
    assert_eq!(r.articles.len(), 2);
    assert!(r.articles.iter().any(|a| a.page_id == 1));
}

#[test]
fn zero_cap_is_rejected() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let cfg = CrawlConfig {
        max_articles: 0,
        ..config(1)
    };
    assert!(matches!(
        Crawler::new(&c, cfg),
        Err(CrawlError::InvalidConfig(_))
    ));
}

#[test]
fn crawl_records_every_keyword() {
    let c = client(Arc::new(SimulatedWiki::new(small_graph())));
    let keywords = vec![
        "rail transport".to_string(),
        "zzqx".to_string(),
        "pocket wagon".to_string(),
    ];
    let r = Crawler::new(&c, config(0))
        .unwrap()
        .crawl(&keywords)
        .unwrap();
    assert_eq!(r.seeds.len(), 3);
    assert!(r.seeds[1].article.is_none());
    assert_eq!(ids(&r.articles), [1, 2]);
}

#[test]
fn warm_cache_replays_without_network() {
    let dir = tempfile::tempdir().unwrap();
    let wiki = Arc::new(SimulatedWiki::new(small_graph()).with_page_size(2));
    let keywords = vec!["rail transport".to_string(), "steam locomotive".to_string()];

    let online = client(Arc::new(CachedFetcher::new(
        dir.path(),
        Box::new(wiki.clone()),
    )));
    let crawler = Crawler::new(&online, config(2)).unwrap();
    let first = crawler.crawl(&keywords).unwrap();
    let first_texts = crawler.fetch_texts(&first.articles).unwrap();
    let calls = wiki.requests();
    assert!(calls > 0);

    let offline = client(Arc::new(CachedFetcher::offline(dir.path())));
    let crawler = Crawler::new(&offline, config(2)).unwrap();
    let second = crawler.crawl(&keywords).unwrap();
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );
    assert_eq!(crawler.fetch_texts(&second.articles).unwrap(), first_texts);
    assert_eq!(wiki.requests(), calls);

    let unseen = Crawler::new(&offline, config(2))
        .unwrap()
        .crawl(&["tank engine".to_string()]);
    assert!(matches!(unseen, Err(CrawlError::CacheMiss { .. })));
}

/// Random category graph: `n_cats` categories with random parents (cycles
/// allowed) and `n_pages` articles in 1-3 random categories.
fn random_graph(rng: &mut ChaCha8Rng, n_cats: u64, n_pages: u64) -> WikiGraph {
    let cat_name = |i: u64| format!("C{i}");
    let mut pages = Vec::new();
    for i in 0..n_cats {
        let parents: Vec<String> = (0..rng.gen_range(0..3))
            .map(|_| cat_name(rng.gen_range(0..n_cats)))
            .collect();
        let parents: Vec<&str> = parents.iter().map(String::as_str).collect();
        let mut c = category(10_000 + i, &cat_name(i), &parents);
        c.hidden = rng.gen_bool(0.05);
        pages.push(c);
    }
    for i in 0..n_pages {
        let cats: Vec<String> = (0..rng.gen_range(1..4))
            .map(|_| cat_name(rng.gen_range(0..n_cats)))
            .collect();
        let cats: Vec<&str> = cats.iter().map(String::as_str).collect();
        pages.push(page(i + 1, &format!("P{i}"), &cats));
    }
    WikiGraph { pages }
}

/// Independent statement of the depth rule straight from the graph: seeds
/// plus pages of categories at distance < depth from the seeds' categories.
fn oracle(graph: &WikiGraph, seeds: &[u64], depth: usize) -> Vec<u64> {
    let by_title: BTreeMap<&str, &SimPage> =
        graph.pages.iter().map(|p| (p.title.as_str(), p)).collect();
    let visible = |t: &String| by_title.get(t.as_str()).is_some_and(|c| !c.hidden);
    let mut out: BTreeSet<u64> = seeds.iter().copied().collect();
    let mut dist: BTreeMap<&str, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for p in graph.pages.iter().filter(|p| seeds.contains(&p.id)) {
        for c in p.categories.iter().filter(|c| visible(c)) {
            if !dist.contains_key(c.as_str()) {
                dist.insert(c, 0);
                queue.push_back(c.as_str());
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        let d = dist[c];
        for child in graph
            .pages
            .iter()
            .filter(|p| p.categories.iter().any(|x| x == c))
        {
            if child.ns == 14 && !dist.contains_key(child.title.as_str()) {
                dist.insert(&child.title, d + 1);
                queue.push_back(&child.title);
            }
        }
    }
    for p in graph.pages.iter().filter(|p| p.ns == 0) {
        if p.categories
            .iter()
            .any(|c| dist.get(c.as_str()).is_some_and(|&d| d < depth))
        {
            out.insert(p.id);
        }
    }
    out.into_iter().collect()
}

#[test]
fn expansion_matches_graph_oracle_and_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..15 {
        let n_cats = rng.gen_range(5..200);
        let n_pages = rng.gen_range(10..600);
        let graph = random_graph(&mut rng, n_cats, n_pages);
        let seeds: Vec<u64> = (0..rng.gen_range(1..5))
            .map(|_| rng.gen_range(1..=n_pages))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let wiki = Arc::new(SimulatedWiki::new(graph.clone()).with_page_size(50));
        let c = client(wiki);
        let seed_refs: Vec<ArticleRef> = seeds
            .iter()
            .map(|&id| article(id, &format!("P{}", id - 1)))
            .collect();
        let mut prev: Vec<u64> = Vec::new();
        for depth in 0..4 {
            let got = ids(&Crawler::new(&c, config(depth))
                .unwrap()
                .expand(&seed_refs)
                .unwrap()
                .articles);
            assert_eq!(got, oracle(&graph, &seeds, depth), "depth {depth}");
            assert!(prev.iter().all(|id| got.binary_search(id).is_ok()));
            prev = got;
        }
    }
}

#[test]
fn worker_count_does_not_change_result() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graph = random_graph(&mut rng, 150, 500);
    let wiki: Arc<dyn Fetcher> = Arc::new(SimulatedWiki::new(graph).with_page_size(20));
    let c = client(wiki);
    let keywords: Vec<String> = (0..8).map(|i| format!("P{}", i * 37)).collect();
    let run = |workers| {
        let cfg = CrawlConfig {
            workers,
            max_articles: 300,
            ..config(2)
        };
        serde_json::to_string(&Crawler::new(&c, cfg).unwrap().crawl(&keywords).unwrap()).unwrap()
    };
    assert_eq!(run(1), run(4));
}
