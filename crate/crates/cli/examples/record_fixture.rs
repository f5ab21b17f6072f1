//! Records a crawl fixture: serves `<dir>/graph.json` through the simulated
//! wiki, runs `mine --depth 1` against it with `<dir>/cache` as the response
//! cache, and writes the corpus to `<dir>/corpus`.
//!
//! usage: record_fixture <fixture dir> <wordnet dir>

use std::path::PathBuf;
use std::{env, fs, io};

use wikicorpus::crawler::sim::{SimulatedWiki, WikiGraph};
use wikicorpus_cli::{cmd_mine, KeywordArgs, MineArgs, DEFAULT_USER_AGENT};

pub const FIXTURE_ENDPOINT: &str = "https://fixture.invalid/w/api.php";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let mut args = env::args().skip(1);
    let (Some(dir), Some(wordnet)) = (args.next(), args.next()) else {
        eprintln!("usage: record_fixture <fixture dir> <wordnet dir>");
        std::process::exit(2);
    };
    let dir = PathBuf::from(dir);
    if env::var_os("SOURCE_DATE_EPOCH").is_none() {
        env::set_var("SOURCE_DATE_EPOCH", "1700000000");
    }
    let graph = WikiGraph::load(dir.join("graph.json"))?;
    let cache = dir.join("cache");
    let out = dir.join("corpus");
    for d in [&cache, &out] {
        if d.exists() {
            fs::remove_dir_all(d)?;
        }
    }
    let sim = SimulatedWiki::new(graph).with_page_size(50);
    let mine = MineArgs {
        keywords: KeywordArgs {
            input: dir.join("rs.txt"),
            top_k: 50,
            wordnet: PathBuf::from(wordnet),
            background: vec![],
        },
        out,
        depth: 1,
        offline: false,
        cache: Some(cache),
        max_articles: 5000,
        endpoint: FIXTURE_ENDPOINT.to_string(),
        user_agent: DEFAULT_USER_AGENT.to_string(),
        workers: 4,
        request_delay_ms: 0,
    };
    let summary = cmd_mine(&mine, Some(Box::new(sim)), &mut io::sink())?;
    let seeds = summary
        .crawl
        .seeds
        .iter()
        .filter(|s| s.article.is_some())
        .count();
    println!("seed matches\t{seeds}");
    println!("articles\t{}", summary.crawl.articles.len());
    Ok(())
}
