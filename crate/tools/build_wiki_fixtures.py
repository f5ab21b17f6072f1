"""Generates the synthetic wiki graphs and the toy word vectors used by the
crawl, corpus and relatedness fixtures.

Outputs (all deterministic for a given SEED):
  fixtures/railway/graph.json
  fixtures/transportation/graph.json
  fixtures/vectors/toy.txt

The graphs follow MediaWiki conventions: category membership is declared on
the member page, categories are ns-14 pages, hidden maintenance categories
are flagged, and each graph carries a disambiguation page, a redirect, and
non-article members (portal, file) that the crawler must ignore.
"""
import json
import math
import os
import random

SEED = 20230501
ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")

ADJECTIVES = ["modern", "heavy", "regional", "national", "high", "narrow", "standard",
              "historic", "main", "early", "large", "small", "new", "urban", "local"]
VERBS = ["carries", "uses", "connects", "supports", "controls", "serves", "requires",
         "protects", "operates", "links", "improves", "reduces"]
GENERAL = ["first", "many", "several", "important", "common", "typical", "design",
           "type", "example", "part", "form", "period", "country", "company", "region",
           "year", "number", "area", "development", "shall", "use", "used", "called",
           "known", "built", "opened", "introduced", "various", "different", "major"]
OFF_TOPIC = ["century", "war", "king", "museum", "art", "film", "music", "novel",
             "painting", "poet", "church", "festival", "theatre", "album", "artist",
             "literature", "queen", "story", "song", "collection"]
TECH = ["software", "data", "message", "interface", "requirement", "function",
        "status", "command", "unit", "computer", "display", "sensor", "radio",
        "communication", "monitoring", "equipment", "information", "operator",
        "accuracy", "time", "seconds", "milliseconds", "position", "distance"]

DOMAINS = {
    "railway": {
        "weights": {
            "rail": 12, "track": 11, "train": 13, "railway": 10, "railroad": 8,
            "locomotive": 5, "wagon": 4, "station": 5, "signal": 4, "line": 5,
            "passenger": 4, "freight": 4, "brake": 4, "gauge": 3, "sleeper": 2,
            "ballast": 2, "platform": 3, "carriage": 3, "coach": 2, "engine": 3,
            "electrification": 2, "catenary": 2, "interlocking": 2, "switch": 2,
            "junction": 2, "tunnel": 2, "bridge": 2, "timetable": 2, "depot": 2,
            "yard": 2, "axle": 2, "bogie": 2, "wheel": 2, "coupling": 2,
            "diesel": 2, "steam": 2, "traction": 2, "signalling": 2, "block": 2,
            "balise": 1, "locomotives": 1, "sidings": 1, "shunting": 1,
        },
        "root": "Rail transport",
        "pages_per_category": (18, 60),
        "subcats": ["Locomotives", "Rail infrastructure", "Railway signalling",
                    "Railway brakes", "Rolling stock", "Railway safety", "Level crossings",
                    "Railway stations", "Rail freight transport", "Passenger rail transport",
                    "High-speed rail", "Railway electrification", "Rail yards",
                    "Railway tunnels", "Railway bridges", "Track gauges", "Railway companies",
                    "Rail transport operations", "Train protection systems", "Railway radio",
                    "Railway platforms", "Rail vehicle technology", "Railway accidents",
                    "Rail transport history", "Heritage railways", "Urban rail",
                    "Rail transport by country", "Railway culture",
                    "Rail transport terminology", "Rail trails", "Railway workers"],
        "root_pages": ["Bi-directional vehicle", "Pocket wagon", "Rail speed record",
                       "Railway air brake", "Rail profile", "Track geometry",
                       "Railway coupling", "Rail adhesion", "Train ferry", "Rail gauge",
                       "Railway timetable", "Rail tracks", "Bogie", "Railway sleeper",
                       "Track ballast", "Rack railway", "Funicular", "Monorail",
                       "Tram-train", "Rail yard", "Railroad switch", "Wheelset"],
        # (title, categories) of hand-named articles the keywords should find
        "named": [
            ("European Train Control System", ["Train protection systems", "Railway signalling"]),
            ("Radio Block Centre", ["Railway signalling", "Railway radio"]),
            ("Emergency brake (train)", ["Railway brakes", "Railway safety"]),
            ("Balise", ["Railway signalling", "Train protection systems"]),
            ("Driver machine interface", ["Rail vehicle technology"]),
            ("Euroradio", ["Railway radio"]),
            ("Odometry", ["Rail vehicle technology"]),
            ("Juridical recorder", ["Rail vehicle technology", "Railway safety"]),
            ("Platform screen doors", ["Railway platforms", "Railway safety"]),
            ("Point machine", ["Rail infrastructure", "Railway signalling"]),
            ("Train integrity monitoring", ["Train protection systems"]),
            ("Rolling stock", ["Rolling stock"]),
            ("Level crossing", ["Level crossings", "Railway safety"]),
            ("Track gradient", ["Rail infrastructure"]),
            ("Passenger alarm", ["Railway safety"]),
        ],
        "disambiguation": "Train (disambiguation)",
        "redirect": ("Railway transport", "Rail transport"),
    },
    "transportation": {
        "weights": {
            "traffic": 13, "road": 12, "street": 10, "lane": 9, "vehicle": 6,
            "intersection": 5, "car": 5, "driver": 4, "speed": 4, "pedestrian": 4,
            "highway": 4, "bus": 3, "bicycle": 3, "junction": 3, "parking": 3,
            "congestion": 3, "sign": 3, "light": 3, "crossing": 2, "motorway": 3,
            "route": 2, "city": 3, "urban": 2, "sensor": 2, "camera": 2, "toll": 2,
            "roundabout": 2, "sidewalk": 2, "truck": 2, "flow": 2, "capacity": 2,
            "signal": 3, "carriageway": 2, "kerb": 1, "detector": 1, "cyclist": 1,
        },
        "root": "Road transport",
        "pages_per_category": (6, 24),
        "subcats": ["Road traffic management", "Traffic signals", "Road safety",
                    "Intersections", "Parking", "Road vehicles", "Highways",
                    "Urban planning", "Cycling infrastructure", "Pedestrian infrastructure",
                    "Traffic law", "Road infrastructure", "Intelligent transportation systems",
                    "Bus transport", "Toll roads", "Traffic congestion", "Road signs"],
        "root_pages": ["Traffic", "Lane", "Street", "Road", "Traffic flow",
                       "Carriageway", "Traffic calming", "Road surface"],
        "named": [
            ("Traffic light", ["Traffic signals", "Road traffic management"]),
            ("Traffic management centre", ["Road traffic management",
                                           "Intelligent transportation systems"]),
            ("Induction loop", ["Intelligent transportation systems"]),
            ("Ramp meter", ["Road traffic management", "Highways"]),
            ("Variable message sign", ["Road signs", "Intelligent transportation systems"]),
            ("Pedestrian crossing", ["Pedestrian infrastructure", "Road safety"]),
            ("Bus lane", ["Bus transport", "Road infrastructure"]),
            ("Traffic camera", ["Intelligent transportation systems", "Traffic law"]),
            ("Parking guidance system", ["Parking", "Intelligent transportation systems"]),
            ("Emergency vehicle", ["Road vehicles", "Road safety"]),
            ("Traffic congestion", ["Traffic congestion"]),
        ],
        "disambiguation": "Signal (disambiguation)",
        "redirect": ("Road traffic", "Traffic"),
    },
}

HIDDEN = ["Category:Articles with short description", "Category:All stub articles",
          "Category:Webarchive template wayback links"]


def weighted_sampler(rng, weights):
    words = list(weights)
    cum = []
    total = 0
    for w in words:
        total += weights[w]
        cum.append(total)

    def pick():
        x = rng.random() * total
        lo, hi = 0, len(cum) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if cum[mid] > x:
                hi = mid
            else:
                lo = mid + 1
        return words[lo]
    return pick


def sentence(rng, noun, title_words):
    n = [noun() for _ in range(4)]
    adj = rng.choice(ADJECTIVES)
    verb = rng.choice(VERBS)
    gen = rng.choice(GENERAL)
    templates = [
        f"The {n[0]} {verb} the {n[1]} of the {n[2]}.",
        f"A {adj} {n[0]} {verb} the {n[1]} {n[2]}.",
        f"Many {gen} {n[0]} designs use a {adj} {n[1]}.",
        f"The {adj} {n[0]} {n[1]} {verb} each {n[2]} and {n[3]}.",
        f"In {rng.randint(1820, 2020)}, the first {n[0]} {n[1]} opened near the {n[2]}.",
        f"Each {n[0]} {verb} {rng.randint(2, 90)} {n[1]} units on the {n[2]}.",
        f"The {' '.join(title_words)} {verb} the {adj} {n[0]}.",
    ]
    return rng.choice(templates)


def off_topic_sentence(rng):
    w = [rng.choice(OFF_TOPIC) for _ in range(3)]
    return f"The {rng.choice(ADJECTIVES)} {w[0]} of the {w[1]} inspired a {w[2]}."


def article_text(rng, noun, title, off_topic=False):
    words = [w.lower() for w in title.replace("(", " ").replace(")", " ").split()]
    parts = [f"{title} is a {rng.choice(ADJECTIVES)} {noun()} {rng.choice(GENERAL)}."]
    for _ in range(rng.randint(6, 18)):
        if off_topic and rng.random() < 0.85:
            parts.append(off_topic_sentence(rng))
        else:
            parts.append(sentence(rng, noun, words))
    return " ".join(parts)


def build_graph(name, spec, rng):
    noun = weighted_sampler(rng, spec["weights"])
    pages = []
    titles = set()
    next_article = [1000]
    next_cat = [900000]

    def add_article(title, cats, off_topic=False):
        assert title not in titles, title
        titles.add(title)
        cats = [f"Category:{c}" for c in cats]
        if rng.random() < 0.6:
            cats.append(rng.choice(HIDDEN))
        page = {"id": next_article[0], "title": title, "ns": 0,
                "text": article_text(rng, noun, title, off_topic), "categories": cats}
        next_article[0] += rng.randint(1, 7)
        pages.append(page)
        return page

    def add_category(cat, parents, hidden=False):
        title = cat if cat.startswith("Category:") else f"Category:{cat}"
        assert title not in titles, title
        titles.add(title)
        page = {"id": next_cat[0], "title": title, "ns": 14, "text": "",
                "categories": [f"Category:{p}" for p in parents]}
        if hidden:
            page["hidden"] = True
        next_cat[0] += 1
        pages.append(page)
        return page

    def fresh_title():
        nouns = list(spec["weights"])
        for _ in range(1000):
            form = rng.random()
            if form < 0.4:
                t = f"{rng.choice(ADJECTIVES)} {rng.choice(nouns)}"
            elif form < 0.8:
                t = f"{rng.choice(nouns)} {rng.choice(nouns)}"
            else:
                t = f"{rng.choice(ADJECTIVES)} {rng.choice(nouns)} {rng.choice(nouns)}"
            t = t[0].upper() + t[1:]
            if t not in titles and len(set(t.lower().split())) == len(t.split()):
                return t
        raise RuntimeError("title space exhausted")

    root = spec["root"]
    for h in HIDDEN:
        add_category(h, [], hidden=True)
    # The root sits inside one of its own subcategories: a cycle.
    add_category(root, ["Transport", spec["subcats"][-1]])
    add_category("Transport", [])
    for sub in spec["subcats"]:
        add_category(sub, [root])

    add_article(root, [root])
    for t in spec["root_pages"]:
        add_article(t, [root])
    portal = {"id": 1, "title": f"Portal:{root}", "ns": 100, "text": "", "categories": [f"Category:{root}"]}
    image = {"id": 2, "title": f"File:{root}.jpg", "ns": 6, "text": "", "categories": [f"Category:{root}"]}
    pages += [portal, image]
    titles.update([portal["title"], image["title"]])

    # second-level subcategories with a few cross links back up the tree
    deep = []
    for sub in spec["subcats"]:
        for _ in range(rng.randint(0, 3)):
            t = f"{fresh_title()} ({sub.lower()})"
            parents = [sub]
            if rng.random() < 0.2:
                parents.append(rng.choice(spec["subcats"]))
            add_category(t, parents)
            deep.append(t[len("Category:"):] if t.startswith("Category:") else t)
        if rng.random() < 0.15:
            # cycle between sibling subcategories
            other = rng.choice(spec["subcats"])
            if other != sub:
                cat = next(p for p in pages if p["title"] == f"Category:{other}")
                cat["categories"].append(f"Category:{sub}")

    for title, cats in spec["named"]:
        add_article(title, cats)
    for sub in spec["subcats"]:
        for _ in range(rng.randint(*spec["pages_per_category"])):
            cats = [sub]
            if rng.random() < 0.25:
                cats.append(rng.choice(spec["subcats"]))
            add_article(fresh_title(), cats, off_topic=rng.random() < 0.05)
    for sub in deep:
        for _ in range(rng.randint(3, 12)):
            add_article(fresh_title(), [sub])
    # articles whose only categories are hidden
    for _ in range(3):
        page = add_article(fresh_title(), [])
        page["categories"] = [rng.choice(HIDDEN)]

    dis = spec["disambiguation"]
    base = dis.split(" (")[0]
    pages.append({"id": next_article[0], "title": dis, "ns": 0, "disambiguation": True,
                  "text": f"{base} may refer to several {base.lower()} topics: "
                          + " ".join(f"{base} {noun()}." for _ in range(8)),
                  "categories": ["Category:Disambiguation pages"]})
    titles.add(dis)
    next_article[0] += 1
    src, dst = spec["redirect"]
    target = next(p for p in pages if p["title"] == dst)
    pages.append({"id": next_article[0], "title": src, "ns": 0, "text": "",
                  "redirect_to": target["id"], "categories": [f"Category:{spec['subcats'][0]}"]})
    next_article[0] += 1

    pages.sort(key=lambda p: p["id"])
    return {"pages": pages}


def unit(rng, dim):
    v = [rng.gauss(0, 1) for _ in range(dim)]
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def build_vectors(rng, dim=50):
    topics = {t: unit(rng, dim) for t in ["rail", "road", "transport", "tech", "general", "culture"]}
    rows = {}

    def add(word, mix, noise):
        if word in rows:
            return
        v = [0.0] * dim
        for topic, w in mix.items():
            v = [a + w * b for a, b in zip(v, topics[topic])]
        v = [a + rng.gauss(0, noise / math.sqrt(dim)) for a in v]
        rows[word] = v

    shared = {"vehicle", "driver", "speed", "signal", "route", "crossing", "junction",
              "passenger", "station", "platform", "brake", "line", "block"}
    for w in DOMAINS["railway"]["weights"]:
        mix = {"transport": 0.8, "rail": 0.4, "road": 0.3} if w in shared else {"rail": 1.0, "transport": 0.6}
        add(w, mix, 0.5)
    for w in DOMAINS["transportation"]["weights"]:
        mix = {"transport": 0.8, "rail": 0.3, "road": 0.4} if w in shared else {"road": 1.0, "transport": 0.6}
        add(w, mix, 0.5)
    for w in TECH:
        add(w, {"tech": 1.0, "transport": 0.5}, 0.6)
    for w in ADJECTIVES + VERBS + GENERAL:
        add(w, {"general": 0.8, "transport": 0.5}, 0.7)
    for w in OFF_TOPIC:
        add(w, {"culture": 1.0, "general": 0.3}, 0.6)
    return rows


def main():
    rng = random.Random(SEED)
    for name, spec in DOMAINS.items():
        graph = build_graph(name, spec, rng)
        path = os.path.join(ROOT, name, "graph.json")
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(graph, f, indent=1, sort_keys=True)
            f.write("\n")
        n_art = sum(1 for p in graph["pages"] if p["ns"] == 0)
        n_cat = sum(1 for p in graph["pages"] if p["ns"] == 14)
        print(f"{name}: {n_art} articles, {n_cat} categories")
    rows = build_vectors(rng)
    path = os.path.join(ROOT, "vectors", "toy.txt")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(rows)} 50\n")
        for word in sorted(rows):
            f.write(word + " " + " ".join(f"{x:.6f}" for x in rows[word]) + "\n")
    print(f"vectors: {len(rows)} words")


if __name__ == "__main__":
    main()
