"""Writes fixtures/wordnet-mini: a ~50-lemma lexicon in the WordNet index/exc
file layout. Only the first two fields of index lines are meaningful; the
rest are placeholder counts and offsets."""
import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures", "wordnet-mini")

NOUNS = """accuracy alarm brake command communication curve data distance door
driver function goose level line link message mode operator passenger platform
position power profile rail railroad railway requirement road rover route
signal software speed station status street system time track traffic train
unit vehicle lane""".split()
VERBS = ["transmit", "display", "command", "signal", "train", "brake"]
ADJS = ["active", "open"]
ADVS = ["before"]

NOUN_EXC = [("geese", "goose")]
VERB_EXC = [("transmitted", "transmit")]

HEADER = "  1 miniature fixture lexicon in the dictionary index file layout\n"


def write(name, lines):
    with open(os.path.join(OUT, name), "w", encoding="utf-8", newline="\n") as f:
        f.write("".join(lines))


def index_lines(words, letter):
    body = [f"{w} {letter} 1 0 1 0 {i + 1:08d}\n" for i, w in enumerate(sorted(set(words)))]
    return [HEADER] + body


def main():
    os.makedirs(OUT, exist_ok=True)
    write("index.noun", index_lines(NOUNS, "n"))
    write("index.verb", index_lines(VERBS, "v"))
    write("index.adj", index_lines(ADJS, "a"))
    write("index.adv", index_lines(ADVS, "r"))
    write("noun.exc", [f"{a} {b}\n" for a, b in NOUN_EXC])
    write("verb.exc", [f"{a} {b}\n" for a, b in VERB_EXC])
    total = len(set(NOUNS)) + len(set(VERBS)) + len(ADJS) + len(ADVS)
    print(f"{total} entries", file=sys.stderr)


if __name__ == "__main__":
    main()
