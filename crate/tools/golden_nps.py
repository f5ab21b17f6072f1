"""Reference noun-phrase spans for the golden POS file.

Applies DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN) as a regular expression over one
letter per tag (leftmost, greedy, non-overlapping) and writes
sentence<TAB>start<TAB>end<TAB>tokens, with token indices half-open.

usage: python3 tools/golden_nps.py fixtures/golden/pos_golden.tsv > fixtures/golden/np_golden.tsv
"""
import re
import sys

LETTER = {"DET": "D", "ADJ": "A", "NOUN": "N", "PROPN": "P", "NUM": "M"}
GRAMMAR = re.compile(r"D?[ANPM]*[NP]")


def sentences(path):
    current = []
    for line in open(path, encoding="utf-8"):
        line = line.rstrip("\n")
        if not line:
            if current:
                yield current
            current = []
            continue
        token, tag = line.split("\t")
        current.append((token, tag))
    if current:
        yield current


def main(path):
    for s, sent in enumerate(sentences(path)):
        letters = "".join(LETTER.get(tag, "o") for _, tag in sent)
        for m in GRAMMAR.finditer(letters):
            words = " ".join(tok for tok, _ in sent[m.start():m.end()])
            print(f"{s}\t{m.start()}\t{m.end()}\t{words}")


if __name__ == "__main__":
    main(sys.argv[1])
