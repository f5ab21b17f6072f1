use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const FIXTURE_ENDPOINT: &str = "https://fixture.invalid/w/api.php";

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn wikicorpus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wikicorpus"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Offline `mine` over a recorded fixture cache.
fn mine(domain: &str, depth: usize, workers: usize, out: &Path) -> Output {
    let fx = fixtures();
    let cache = fx.join(domain).join("cache");
    let rs = fx.join(domain).join("rs.txt");
    let wordnet = fx.join("wordnet-mini");
    let depth = depth.to_string();
    let workers = workers.to_string();
    wikicorpus(&[
        "mine",
        "--input",
        s(&rs),
        "--wordnet",
        s(&wordnet),
        "--out",
        s(out),
        "--depth",
        &depth,
        "--workers",
        &workers,
        "--offline",
        "--cache",
        s(&cache),
        "--endpoint",
        FIXTURE_ENDPOINT,
    ])
}

fn section_count(text: &str, header: &str) -> usize {
    text.lines()
        .find_map(|l| l.strip_prefix(header).and_then(|r| r.trim().parse().ok()))
        .unwrap_or_else(|| panic!("no {header:?} line in\n{text}"))
}

#[test]
fn help_lists_flags() {
    let o = wikicorpus(&["mine", "--help"]);
    assert!(o.status.success());
    let help = stdout(&o);
    for flag in [
        "--input",
        "--out",
        "--depth",
        "--wordnet",
        "--top-k",
        "--offline",
        "--cache",
        "--max-articles",
    ] {
        assert!(help.contains(flag), "{flag} missing from help");
    }
}

#[test]
fn missing_wordnet_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let rs = fixtures().join("railway/rs.txt");
    let missing = dir.path().join("nope");
    let o = wikicorpus(&["keywords", "--input", s(&rs), "--wordnet", s(&missing)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--wordnet"), "{}", stderr(&o));
}

#[test]
fn missing_required_flag_exits_2() {
    let o = wikicorpus(&["keywords", "--top-k", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_vectors_is_a_config_error() {
    let corpus = fixtures().join("railway/corpus");
    let test = fixtures().join("railway/test_rs_1.txt");
    let o = wikicorpus(&[
        "eval",
        "--corpus",
        s(&corpus),
        "--input",
        s(&test),
        "--vectors",
        "/nonexistent/vectors.txt",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_top_n_is_a_config_error() {
    let corpus = fixtures().join("railway/corpus");
    let o = wikicorpus(&["report", "--corpus", s(&corpus), "--top-n", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn offline_without_cache_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let rs = fixtures().join("railway/rs.txt");
    let wordnet = fixtures().join("wordnet-mini");
    let out = dir.path().join("out");
    let o = wikicorpus(&[
        "mine",
        "--input",
        s(&rs),
        "--wordnet",
        s(&wordnet),
        "--out",
        s(&out),
        "--offline",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_document_yields_no_keywords() {
    let dir = tempfile::tempdir().unwrap();
    let rs = dir.path().join("empty.txt");
    fs::write(&rs, "").unwrap();
    let wordnet = fixtures().join("wordnet-mini");
    let o = wikicorpus(&["keywords", "--input", s(&rs), "--wordnet", s(&wordnet)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "");
}

#[test]
fn keywords_respects_top_k_and_is_deterministic() {
    let rs = fixtures().join("railway/rs.txt");
    let wordnet = fixtures().join("wordnet-mini");
    let a = wikicorpus(&[
        "keywords",
        "--input",
        s(&rs),
        "--wordnet",
        s(&wordnet),
        "--top-k",
        "5",
    ]);
    let b = wikicorpus(&[
        "keywords",
        "--input",
        s(&rs),
        "--wordnet",
        s(&wordnet),
        "--top-k",
        "5",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.split('\t').count() >= 2));
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("trainborne equipment\t"));
}

#[test]
fn mine_depth_zero_keeps_only_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = mine("railway", 0, 4, &out);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(section_count(&text, "# seed matches\t"), 24);
    assert_eq!(section_count(&text, "# articles\t"), 17);
    assert!(text.contains("trainborne equipment\t"));
    assert!(text.contains("emergency brake\t"));
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"depth\": 0"));
}

#[test]
fn mine_depth_one_reproduces_recorded_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = mine("railway", 1, 4, &out);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(section_count(&stdout(&o), "# articles\t"), 468);
    let recorded = fixtures().join("railway/corpus/manifest.json");
    assert_eq!(
        fs::read(out.join("manifest.json")).unwrap(),
        fs::read(recorded).unwrap()
    );
}

#[test]
fn mine_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one");
    let four = dir.path().join("four");
    let a = mine("transportation", 1, 1, &one);
    let b = mine("transportation", 1, 4, &four);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        fs::read(one.join("manifest.json")).unwrap(),
        fs::read(four.join("manifest.json")).unwrap()
    );
}

#[test]
fn eval_prints_json_report() {
    let corpus = fixtures().join("transportation/corpus");
    let t1 = fixtures().join("transportation/test_rs_1.txt");
    let t2 = fixtures().join("transportation/test_rs_2.txt");
    let vectors = fixtures().join("vectors/toy.txt");
    let o = wikicorpus(&[
        "eval",
        "--corpus",
        s(&corpus),
        "--input",
        s(&t1),
        "--input",
        s(&t2),
        "--vectors",
        s(&vectors),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let avg = v["avg"].as_f64().unwrap();
    assert!((avg - 0.9301482043672878).abs() <= 1e-9, "{avg}");
}

#[test]
fn report_prints_top_terms() {
    let corpus = fixtures().join("railway/corpus");
    let wordnet = fixtures().join("wordnet-mini");
    let o = wikicorpus(&[
        "report",
        "--corpus",
        s(&corpus),
        "--top-n",
        "3",
        "--wordnet",
        s(&wordnet),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("train\t1382\n"), "{text}");
}
