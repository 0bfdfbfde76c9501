#!/usr/bin/env python3
# Copyright 2026 The litmap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Regenerates tests/fixtures/pipeline: a 10-record bibliography, the
# publisher pages for it, toy word vectors, remote vectors and a manifest.
import hashlib
import json
import os
import re

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "pipeline")
FETCHED_AT = "2021-03-01T12:00:00Z"

TVCG = "IEEE Trans. Vis. Comput. Graph."
VAST = "IEEE VAST"
CHI = "CHI"

# kind, key, title, authors (XML text), venue, year, doi suffix, page
PAPERS = [
    dict(kind="article", key="journals/tvcg/StaskoG10", title="Jigsaw: Supporting Investigative Analysis through Interactive Visualization",
         authors=["John T. Stasko", "Carsten G&ouml;rg"], venue=TVCG, year=2010, page="ieee",
         abstract="Investigative analysts face the challenge of making sense of large document collections. We present a visual analytics system that links entities across documents and supports iterative sensemaking.",
         keywords=["Visual analytics", "Sensemaking", "Investigative analysis"], citations=412),
    dict(kind="inproceedings", key="conf/ieeevast/KangS12", title="Examining the Use of a Visual Analytics System for Sensemaking Tasks",
         authors=["Youn-ah Kang", "John T. Stasko"], venue=VAST, year=2012, page="ieee",
         abstract="We report a long term field study of analysts using a visual analytics system for sensemaking tasks on document collections and describe how the system changed their investigative workflow.",
         keywords=["Sensemaking", "Visual analytics", "Field study"], citations=88),
    dict(kind="inproceedings", key="conf/chi/DoeE15", title="Bias in Interactive Machine Learning Interfaces",
         authors=["Jane Doe", "Alex Endert"], venue=CHI, year=2015, page="acm",
         abstract="Interactive machine learning interfaces can introduce cognitive bias. We study how users of interactive model steering tools anchor on early results and propose interface metrics for bias.",
         keywords=["Cognitive bias", "Interactive machine learning", "HCI"], citations=57),
    dict(kind="article", key="journals/tvcg/EnderN18", title="Semantic Interaction for Literature Exploration",
         authors=["Alex Endert", "Arpit Narechania"], venue=TVCG, year=2018, page="ieee",
         abstract="Semantic interaction lets analysts steer document embeddings by direct manipulation. We apply it to academic literature exploration and evaluate how similarity search supports literature reviews.",
         keywords=["Semantic interaction", "Document embeddings", "Literature review"], citations=23),
    dict(kind="inproceedings", key="conf/ieeevast/Stasko08", title="Visual Analytics of Document Collections",
         authors=["John T. Stasko"], venue=VAST, year=2008, page="ieee",
         abstract="Document collections are central to intelligence analysis. This paper surveys visual analytics techniques for exploring document collections, entities and their connections at scale.",
         keywords=["Visual analytics", "Document collections"], citations=140),
    dict(kind="inproceedings", key="conf/chi/Roe19", title="A Study Without an Abstract Page",
         authors=["Richard Roe"], venue=CHI, year=2019, page="acm-missing-abstract",
         abstract=None, keywords=["Crowdsourcing"], citations=3),
    dict(kind="article", key="journals/tvcg/Short20", title="Vis",
         authors=["Sam Short"], venue=TVCG, year=2020, page="ieee",
         abstract="A record whose title is too short to keep after cleaning, even though the abstract itself is long enough.",
         keywords=["Visualization"], citations=0),
    dict(kind="inproceedings", key="conf/ieeevast/WongE16", title="Dimensionality Reduction for Embedding Maps",
         authors=["Pak Chung Wong", "Alex Endert"], venue=VAST, year=2016, page="ieee",
         abstract="Two dimensional maps of document embeddings help analysts see clusters. We compare projection techniques for embedding maps and discuss how distances in the map relate to similarity.",
         keywords=["Dimensionality reduction", "Document embeddings", "Visualisation"], citations=35),
    dict(kind="inproceedings", key="conf/chi/LeeS11", title="Human-Computer Interaction Patterns in Visual Search",
         authors=["Bongshin Lee", "John T. Stasko"], venue=CHI, year=2011, page="acm",
         abstract="We observe people searching large collections with visual interfaces and describe recurring interaction patterns, with implications for the design of search user interfaces.",
         keywords=["HCI", "Human-Computer Interaction", "Visual search", "HCI"], citations=61),
    dict(kind="article", key="journals/tvcg/NarechaniaE21", title="Literature Discovery with Document Embeddings",
         authors=["Arpit Narechania", "Alex Endert", "John T. Stasko"], venue=TVCG, year=2021, page="ieee",
         abstract="We describe a visual tool that helps researchers discover relevant literature using document embeddings, similarity search by seed papers or by a working abstract, and faceted summaries.",
         keywords=["Literature review", "Document embeddings", "Visualisation"], citations=12),
]

EXTRA_XML = """<www key="homepages/s/JohnTStasko"><author>John T. Stasko</author><title>Home Page</title></www>
<article key="journals/tvcg/NoTitle99"><author>Nobody</author><journal>IEEE Trans. Vis. Comput. Graph.</journal><year>1999</year></article>
<inproceedings key="conf/sigmod/Other20"><author>Ann Other</author><title>Query Processing at Scale</title><booktitle>SIGMOD Conference</booktitle><year>2020</year><ee>https://doi.org/10.1145/9999999.9999999</ee></inproceedings>
"""


def unescape(text):
    return text.replace("&ouml;", "ö")


def doi(i):
    return "https://doi.org/10.1109/FIX.%04d" % i


def ieee_page(p, arnumber):
    meta = {"abstract": p["abstract"], "keywords": [{"type": "Author Keywords", "kwd": p["keywords"]}],
            "citationCountPaper": p["citations"]}
    body = json.dumps(meta, separators=(",", ":"))
    return ("<!DOCTYPE html><html><head><title>%s - IEEE Xplore</title></head><body>\n"
            "<script>xplGlobal.document.metadata=%s;</script>\n</body></html>\n" % (p["title"], body)), \
        "https://ieeexplore.ieee.org/document/%d" % arnumber


def acm_page(p, n, with_abstract=True):
    tags = "".join('<a href="/keyword/%d">%s</a>' % (i, k) for i, k in enumerate(p["keywords"]))
    abstract = ('<div class="abstractSection abstractInFull"><p>%s</p></div>\n' % p["abstract"]) if with_abstract else ""
    html = ("<!DOCTYPE html><html><head><title>%s</title></head><body>\n%s"
            '<div class="tags-widget__content">%s</div>\n'
            '<span class="citation"><span class="bold">%d</span> citations</span>\n</body></html>\n') % (
        p["title"], abstract, tags, p["citations"])
    return html, "https://dl.acm.org/doi/10.1145/%d" % n


def vector(seed, dims):
    h = hashlib.sha256(seed.encode()).digest()
    return [(h[i] - 128) / 128.0 for i in range(dims)]


def tokens(text):
    return re.findall(r"[a-z0-9]+", text.lower())


def content_hash(title, abstract):
    return hashlib.sha256(("%d:%s%s" % (len(title.encode()), title, abstract)).encode()).hexdigest()


def main():
    os.makedirs(os.path.join(HERE, "pages"), exist_ok=True)
    xml = ['<?xml version="1.0" encoding="ISO-8859-1"?>', '<!DOCTYPE dblp SYSTEM "dblp.dtd">', "<dblp>"]
    index = {}
    for i, p in enumerate(PAPERS):
        venue_tag = "journal" if p["kind"] == "article" else "booktitle"
        authors = "".join("<author>%s</author>" % a for a in p["authors"])
        xml.append('<%s key="%s" mdate="2021-01-01">%s<title>%s</title><%s>%s</%s><year>%d</year><ee>%s</ee></%s>' % (
            p["kind"], p["key"], authors, p["title"], venue_tag, p["venue"], venue_tag, p["year"], doi(i), p["kind"]))
        if p["page"] == "ieee":
            html, final = ieee_page(p, 5000000 + i)
        else:
            html, final = acm_page(p, 3000000 + i, with_abstract=p["page"] == "acm")
        name = hashlib.sha256(doi(i).encode()).hexdigest() + ".html"
        with open(os.path.join(HERE, "pages", name), "w") as f:
            f.write(html)
        index[doi(i)] = {"file": name, "status": 200, "final_url": final, "fetched_at": FETCHED_AT}
    xml.append(EXTRA_XML.rstrip("\n"))
    xml.append("</dblp>")
    with open(os.path.join(HERE, "dblp.xml"), "w", encoding="latin-1") as f:
        f.write("\n".join(xml) + "\n")
    with open(os.path.join(HERE, "pages", "index.json"), "w") as f:
        json.dump(index, f, indent=1, sort_keys=True)
        f.write("\n")

    kept = [p for p in PAPERS if p["abstract"] is not None and len(p["title"]) >= 5]
    vocab = sorted({t for p in kept for t in tokens(p["title"] + " " + p["abstract"])})
    vocab = [t for t in vocab if t not in ("we", "and", "the")]
    with open(os.path.join(HERE, "word_vectors.txt"), "w") as f:
        f.write("%d 8\n" % len(vocab))
        for t in vocab:
            f.write(t + " " + " ".join(repr(v) for v in vector(t, 8)) + "\n")

    remote = {}
    for p in kept:
        h = content_hash(p["title"], p["abstract"])
        remote[h] = {"embedding": vector("remote:" + h, 6)}
    os.makedirs(os.path.join(HERE, "remote"), exist_ok=True)
    with open(os.path.join(HERE, "remote", "vectors.json"), "w") as f:
        json.dump(remote, f, indent=1, sort_keys=True)
        f.write("\n")

    ids = {p["key"]: i for i, p in enumerate(PAPERS)}
    manifest = {
        "xml_records": len(PAPERS),
        "xml_rejects": 2,
        "out_of_venue": 1,
        "cleaned": [ids[p["key"]] for p in kept],
        "dropped_null": [ids[p["key"]] for p in PAPERS if p["abstract"] is None],
        "dropped_length": [ids[p["key"]] for p in PAPERS if p["abstract"] is not None and len(p["title"]) < 5],
        "stasko_papers": [ids[p["key"]] for p in kept if "John T. Stasko" in p["authors"]],
        "venues": [TVCG, VAST, CHI],
    }
    with open(os.path.join(HERE, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=1)
        f.write("\n")
    config = {
        "work_dir": "work",
        "filter": {"dblp_xml": "dblp.xml", "venues": [TVCG, VAST, CHI], "match": "prefix"},
        "scrape": {"mode": "offline", "fixture_dir": "pages", "workers": 2},
        "embed": {"methods": ["tfidf", "sif", "remote"], "word_vectors": "word_vectors.txt",
                  "remote": {"fixture_dir": "remote", "batch_size": 4}},
        "project": {"source": "pca", "method": "sif"},
        "server": {"host": "127.0.0.1", "port": 0},
    }
    with open(os.path.join(HERE, "pipeline.json"), "w") as f:
        json.dump(config, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
