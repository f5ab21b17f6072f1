//! Prints the tokenization of each input line, tokens separated by single spaces.
//! Feeds `tools/reference_tag.py`, which needs the exact token boundaries.

use std::io::{self, BufRead, Write};

fn main() -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for line in io::stdin().lock().lines() {
        let line = line?;
        let tokens: Vec<&str> = wikicorpus::preprocess::tokenize(&line)
            .iter()
            .map(|t| t.surface(&line))
            .collect();
        writeln!(out, "{}", tokens.join(" "))?;
    }
    Ok(())
}
