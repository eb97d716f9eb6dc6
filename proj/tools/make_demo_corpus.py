#!/usr/bin/env python3
"""Write a small synthetic corpus and pipeline.conf for trying the pipeline."""

import argparse
import json
import math
import random
from pathlib import Path

COMMUNITIES = ["twitter", "reddit", "the_donald", "4chan", "gab"]
DOMAINS = [
    ("nytimes.com", 90), ("cnn.com", 80), ("bbc.co.uk", 95), ("washingtonpost.com", 85),
    ("reuters.com", 98), ("breitbart.com", 30), ("infowars.com", 10), ("rt.com", 20),
    ("dailycaller.com", 40), ("foxnews.com", 55),
]
ENTITIES = ["Trump", "US", "U.S.", "Russia", "Clinton", "FBI", "Obama", "CNN"]
START = 1_483_228_800  # 2017-01-01T00:00:00Z


def url_of(i, story):
    domain = DOMAINS[(i // 7 + story) % len(DOMAINS)][0]
    return f"https://www.{domain}/story/{story}/item-{i}?utm_source=feed"


def write_corpus(out, posts=2000, urls=300, stories=8, seed=1):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    with open(out / "sources.csv", "w") as f:
        f.write("domain,score\n")
        for d, s in DOMAINS:
            f.write(f"{d},{s}\n")

    with open(out / "mentions.csv", "w") as f:
        f.write("url,event_id,confidence\n")
        for u in range(urls):
            story = u % stories
            for e in range(4):
                f.write(f"{url_of(u, story)},{10000 + story * 10 + e},{60 + 10 * ((u + e) % 5)}\n")
            f.write(f"{url_of(u, story)},{90000 + rng.randrange(50)},40\n")

    weights = [0.85 ** s for s in range(stories)]
    starts = [START + int(rng.random() * 20 * 86400) for _ in range(stories)]
    with open(out / "posts.jsonl", "w") as f, open(out / "annotations.csv", "w") as ann:
        ann.write("doc_id,entity,label\n")
        for p in range(posts):
            story = rng.choices(range(stories), weights)[0]
            per_story = (urls + stories - 1 - story) // stories
            url = story + stories * rng.randrange(per_story)
            community = rng.choice(COMMUNITIES)
            ts = starts[story] + int(-math.log(1 - rng.random()) * 8 * 86400)
            record = {"id": f"p{p}", "community": community, "ts": ts, "urls": [url_of(url, story)]}
            f.write(json.dumps(record) + "\n")
            # Subcommunity posts also appear in the parent dump.
            if community == "the_donald":
                f.write(json.dumps({**record, "community": "reddit"}) + "\n")
            ann.write(f"p{p},{rng.choice(ENTITIES)},X\n")

    conf = out / "pipeline.conf"
    conf.write_text(
        "posts = posts.jsonl\n"
        "sources = sources.csv\n"
        "mentions = mentions.csv\n"
        "annotations = annotations.csv\n"
        "output_dir = out\n"
        "communities = twitter,reddit,the_donald:reddit,4chan,gab\n"
        "focus_community = the_donald\n"
        "seed = 7\n"
        "gibbs_iters = 100\n"
        "gibbs_burnin = 40\n"
        "workers = 2\n"
    )
    return conf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", help="output directory")
    ap.add_argument("--posts", type=int, default=2000)
    ap.add_argument("--urls", type=int, default=300)
    ap.add_argument("--stories", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    print(write_corpus(args.out, args.posts, args.urls, args.stories, args.seed))


if __name__ == "__main__":
    main()
