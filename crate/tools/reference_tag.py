"""Tag pre-tokenized sentences with the Brill tagger from pattern3 and write the
golden POS file (token<TAB>COARSE, blank line between sentences).

pattern3 3.0.0 needs two small fixes to import on Python 3.7+:
  * pattern3/text/tree.py: the empty `try:` near the top needs a `pass`
  * `raise StopIteration` inside generators must become `return`

usage:
  cargo run -q -p wikicorpus --example dump_tokens < fixtures/golden/sentences.txt \
    | PATTERN3=/path/to/pattern3-3.0.0 python3 tools/reference_tag.py > fixtures/golden/pos_golden.tsv
"""
import os
import sys

sys.path.insert(0, os.environ["PATTERN3"])
import pattern3.text.en as en  # noqa: E402

sys.path.insert(0, os.path.dirname(__file__))
from build_tag_lexicon import coarse  # noqa: E402

en.parser.model = None  # lexicon + morphology + contextual rules only


def main():
    out = []
    for line in sys.stdin:
        tokens = line.split()
        if not tokens:
            continue
        for token, tag in en.parser.find_tags(tokens):
            out.append(f"{token}\t{coarse(tag)}\n")
        out.append("\n")
    sys.stdout.write("".join(out))


if __name__ == "__main__":
    main()
