"""Reference relatedness scores for a corpus directory with numpy.

Document vector = mean of the vectors of lowercased, non-stopword,
non-punctuation tokens found in the table; score = cosine with the test
document (0 for a zero vector). Several test files are joined with a blank
line into one document.

usage: relatedness_oracle.py <corpus dir> <vectors.txt> <stopwords.txt> <test file>...
"""
import json
import os
import re
import sys

import numpy as np

TOKEN = re.compile(r"[^\W_]+(?:[-'’./][^\W_]+)*\.?|[^\w\s]|_", re.UNICODE)
ABBREVIATIONS = None


def tokens(text):
    out = []
    for m in TOKEN.finditer(text):
        t = m.group(0)
        if t.endswith(".") and len(t) > 1 and t not in ABBREVIATIONS:
            out.extend([t[:-1], "."])
        else:
            out.append(t)
    return out


def load_vectors(path):
    table = {}
    dim = None
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f):
            parts = line.rstrip("\n").split(" ")
            if i == 0 and len(parts) == 2 and all(p.isdigit() for p in parts):
                continue
            word, vals = parts[0].lower(), np.array([float(x) for x in parts[1:]])
            dim = len(vals)
            table.setdefault(word, vals)
    return table, dim


def embed(text, table, dim, stop):
    vecs, n_tok = [], 0
    for t in tokens(text.lower()):
        if not any(c.isalnum() for c in t) or t in stop:
            continue
        n_tok += 1
        if t in table:
            vecs.append(table[t])
    v = np.mean(vecs, axis=0) if vecs else np.zeros(dim)
    oov = (n_tok - len(vecs)) / n_tok if n_tok else 0.0
    return v, oov


def cosine(u, v):
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def main():
    global ABBREVIATIONS
    corpus, vectors, stop_path = sys.argv[1:4]
    tests = sys.argv[4:]
    data = os.path.join(os.path.dirname(stop_path))
    ABBREVIATIONS = {l.strip().lower() for l in open(os.path.join(data, "abbreviations.txt"), encoding="utf-8")
                     if l.strip() and not l.startswith("#")}
    stop = {l.strip().lower() for l in open(stop_path, encoding="utf-8") if l.strip() and not l.startswith("#")}
    table, dim = load_vectors(vectors)
    test_text = "\n\n".join(open(t, encoding="utf-8").read() for t in tests)
    tv, oov = embed(test_text, table, dim, stop)
    manifest = json.load(open(os.path.join(corpus, "manifest.json"), encoding="utf-8"))
    scores = []
    for a in manifest["articles"]:
        text = open(os.path.join(corpus, a["relative_path"]), encoding="utf-8").read()
        scores.append(cosine(tv, embed(text, table, dim, stop)[0]))
    print(json.dumps({"n": len(scores), "min": min(scores), "avg": sum(scores) / len(scores),
                      "max": max(scores), "oov_rate": oov}, indent=1))


if __name__ == "__main__":
    main()
