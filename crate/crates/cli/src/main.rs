use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wikicorpus_cli::{
    cmd_eval, cmd_keywords, cmd_mine, cmd_report, CliError, EvalArgs, KeywordArgs, MineArgs,
    ReportArgs, DEFAULT_ENDPOINT, DEFAULT_USER_AGENT,
};

/// Build a domain-specific corpus from Wikipedia, starting from one
/// requirements document.
#[derive(Parser)]
#[command(name = "wikicorpus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine keywords, crawl matching articles and write a corpus directory.
    Mine(MineOpts),
    /// Print the top keywords of a document as TSV. No network access.
    Keywords(KeywordOpts),
    /// Score a corpus against held-out documents; prints JSON.
    Eval(EvalOpts),
    /// Print the most frequent terms of a corpus as TSV.
    Report(ReportOpts),
}

#[derive(Args)]
struct KeywordOpts {
    /// Requirements document, UTF-8 plain text.
    #[arg(long)]
    input: PathBuf,
    /// Number of keywords to keep.
    #[arg(long, default_value_t = 50)]
    top_k: usize,
    /// Directory holding the WordNet index.* and *.exc files.
    #[arg(long)]
    wordnet: PathBuf,
    /// Documents from other domains, used for IDF. Repeatable.
    #[arg(long)]
    background: Vec<PathBuf>,
}

impl KeywordOpts {
    fn into_args(self) -> KeywordArgs {
        KeywordArgs {
            input: self.input,
            top_k: self.top_k,
            wordnet: self.wordnet,
            background: self.background,
        }
    }
}

#[derive(Args)]
struct MineOpts {
    #[command(flatten)]
    keywords: KeywordOpts,
    /// Corpus output directory.
    #[arg(long)]
    out: PathBuf,
    /// Category levels to expand; 0 keeps only the matching articles.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Serve every request from the cache; a miss is an error.
    #[arg(long)]
    offline: bool,
    /// HTTP response cache [default: <out>/.http-cache]
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Stop expanding once this many articles are collected.
    #[arg(long, default_value_t = 5000)]
    max_articles: usize,
    /// MediaWiki API endpoint.
    #[arg(long, default_value = DEFAULT_ENDPOINT)]
    endpoint: String,
    #[arg(long, default_value = DEFAULT_USER_AGENT)]
    user_agent: String,
    /// Concurrent API requests.
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Minimum spacing between live requests, in milliseconds.
    #[arg(long, default_value_t = 100)]
    request_delay_ms: u64,
}

#[derive(Args)]
struct EvalOpts {
    /// Corpus directory written by `mine`.
    #[arg(long)]
    corpus: PathBuf,
    /// Held-out document(s); several are joined into one. Repeatable.
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    /// Word vectors in text format (word followed by components).
    #[arg(long)]
    vectors: PathBuf,
}

#[derive(Args)]
struct ReportOpts {
    /// Corpus directory written by `mine`.
    #[arg(long)]
    corpus: PathBuf,
    /// Number of terms to print.
    #[arg(long, default_value_t = 50)]
    top_n: usize,
    /// Optional WordNet directory for lemmatization.
    #[arg(long)]
    wordnet: Option<PathBuf>,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Mine(o) => {
            let args = MineArgs {
                keywords: o.keywords.into_args(),
                out: o.out,
                depth: o.depth,
                offline: o.offline,
                cache: o.cache,
                max_articles: o.max_articles,
                endpoint: o.endpoint,
                user_agent: o.user_agent,
                workers: o.workers,
                request_delay_ms: o.request_delay_ms,
            };
            cmd_mine(&args, None, out).map(drop)
        }
        Command::Keywords(o) => cmd_keywords(&o.into_args(), out).map(drop),
        Command::Eval(o) => cmd_eval(
            &EvalArgs {
                corpus: o.corpus,
                input: o.input,
                vectors: o.vectors,
            },
            out,
        )
        .map(drop),
        Command::Report(o) => cmd_report(
            &ReportArgs {
                corpus: o.corpus,
                top_n: o.top_n,
                wordnet: o.wordnet,
            },
            out,
        )
        .map(drop),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result =
        run(cli, &mut out).and_then(|()| out.flush().map_err(|e| CliError::Runtime(e.to_string())));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
