"""Collapse the Brill tagger lexicon (as distributed with pattern3) to coarse tags.

Capitalised proper-noun entries are dropped; the tagger assigns PROPN to unknown
capitalised words itself.

usage: python3 tools/build_tag_lexicon.py <en-lexicon.txt> > crates/core/data/tag_lexicon.tsv
"""
import re
import sys

PENN_TO_COARSE = {
    "NN": "NOUN", "NNS": "NOUN",
    "NNP": "PROPN", "NNPS": "PROPN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB", "MD": "VERB",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "IN": "ADP", "TO": "ADP",
    "CD": "NUM",
    ".": "PUNCT", ",": "PUNCT", ":": "PUNCT", "(": "PUNCT", ")": "PUNCT", "``": "PUNCT", "''": "PUNCT", "#": "PUNCT", "$": "PUNCT", '"': "PUNCT",
}


def coarse(tag):
    return PENN_TO_COARSE.get(tag, "OTHER")


def main(path):
    entries = {}
    for line in open(path, encoding="utf-8"):
        if line.startswith(";;;") or not line.strip():
            continue
        word, tag = line.split()[:2]
        if re.search(r"[0-9]", word) or not re.search(r"[A-Za-z]", word):
            continue
        entries[word] = coarse(tag)
    out = []
    for word, tag in entries.items():
        lower = word.lower()
        if word != lower and (entries.get(lower) == tag or tag == "PROPN"):
            continue
        out.append((word, tag))
    out.sort()
    sys.stdout.write("".join(f"{w}\t{t}\n" for w, t in out))


if __name__ == "__main__":
    main(sys.argv[1])
