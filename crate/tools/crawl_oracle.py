"""Reference computation of crawl outcomes directly from a fixture graph.

Re-states, without sharing code with the crate, (a) the simulated search
ranking, (b) the partial title match and (c) the depth rule, then prints the
seed and article counts for depths 0..3.

usage: crawl_oracle.py <graph.json> <keywords.tsv> <wordnet dir> <stopwords.txt>
"""
import json
import os
import re
import sys
from collections import deque

TOKEN = re.compile(r"[^\W_]+(?:[-'’./][^\W_]+)*|[^\w\s]|_", re.UNICODE)
NOUN_RULES = [("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"),
              ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y")]


def load_nouns(wn):
    lemmas = set()
    with open(os.path.join(wn, "index.noun"), encoding="utf-8") as f:
        for line in f:
            if line.startswith(" ") or not line.strip():
                continue
            lemmas.add(line.split()[0].replace("_", " ").lower())
    exc = {}
    path = os.path.join(wn, "noun.exc")
    if os.path.exists(path):
        with open(path, encoding="utf-8") as f:
            for line in f:
                parts = line.split()
                bases = [b for b in parts[1:] if b in lemmas]
                if bases:
                    exc.setdefault(parts[0], bases[0])
    return lemmas, exc


def morphy_noun(word, lemmas, exc):
    if word in exc:
        return exc[word]
    for suffix, ending in NOUN_RULES:
        if word.endswith(suffix) and len(word) > len(suffix):
            cand = word[: -len(suffix)] + ending
            if cand in lemmas:
                return cand
    return word if word in lemmas else None


def content_tokens(text, stop, lemmas, exc):
    words = [t.lower() for t in TOKEN.findall(text)]
    words = [w for w in words if any(c.isalnum() for c in w) and w not in stop]
    if not words:
        return set()
    head = words[-1]
    return set(words[:-1]) | {morphy_noun(head, lemmas, exc) or head}


def search_words(s):
    return {w.lower() for w in re.split(r"[^0-9A-Za-z]+", s) if len(w) > 1}


def main():
    graph_path, kw_path, wn, stop_path = sys.argv[1:5]
    pages = json.load(open(graph_path, encoding="utf-8"))["pages"]
    stop = {l.strip().lower() for l in open(stop_path, encoding="utf-8") if l.strip() and not l.startswith("#")}
    lemmas, exc = load_nouns(wn)
    keywords = [l.split("\t")[0] for l in open(kw_path, encoding="utf-8") if l.strip()]

    by_title = {p["title"]: p for p in pages}
    articles = [p for p in pages if p.get("ns", 0) == 0 and p.get("redirect_to") is None]

    seeds = []
    for kw in keywords:
        q = search_words(kw)
        hits = []
        for p in articles:
            score = 3 * len(q & search_words(p["title"])) + len(q & search_words(p.get("text", "")))
            if score > 0:
                hits.append((-score, p["id"], p))
        hits.sort(key=lambda h: (h[0], h[1]))
        match = None
        for _, _, p in hits[:10]:
            if p.get("disambiguation"):
                continue
            if content_tokens(p["title"], stop, lemmas, exc) & content_tokens(kw, stop, lemmas, exc):
                match = p
                break
        seeds.append((kw, match))

    seed_ids = sorted({p["id"] for _, p in seeds if p})

    def visible(title):
        c = by_title.get(title)
        return c is not None and not c.get("hidden", False)

    dist = {}
    queue = deque()
    for sid in seed_ids:
        page = next(p for p in pages if p["id"] == sid)
        for c in page.get("categories", []):
            if visible(c) and c not in dist:
                dist[c] = 0
                queue.append(c)
    children = {}
    for p in pages:
        for c in p.get("categories", []):
            children.setdefault(c, []).append(p)
    while queue:
        c = queue.popleft()
        for child in children.get(c, []):
            if child.get("ns") == 14 and child["title"] not in dist:
                dist[child["title"]] = dist[c] + 1
                queue.append(child["title"])

    print(f"keyword_matches\t{sum(1 for _, p in seeds if p)}")
    for depth in range(4):
        ids = set(seed_ids)
        for p in pages:
            if p.get("ns", 0) != 0:
                continue
            if any(dist.get(c, depth) < depth for c in p.get("categories", [])):
                ids.add(p["id"])
        print(f"depth{depth}\t{len(ids)}")


if __name__ == "__main__":
    main()
