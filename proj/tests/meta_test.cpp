// Copyright 2026 The litmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "litmap/meta/filter.hpp"
#include "litmap/meta/summary.hpp"
#include "test_support.hpp"

namespace {

using namespace litmap;
using namespace litmap::meta;

const std::vector<std::string> kAuthors = {"John T. Stasko", "Alex Endert", "Jane Doe", "Arpit Narechania", "Pak Wong"};
const std::vector<std::string> kKeywords = {"Visual analytics", "HCI", "Embeddings", "Sensemaking", "Bias"};
const std::vector<std::string> kSources = {"IEEE Trans. Vis. Comput. Graph.", "IEEE VAST", "CHI"};

std::vector<PaperRecord> random_corpus(std::mt19937_64& rng, std::size_t n) {
    std::vector<PaperRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        PaperRecord r;
        r.id = PaperId{static_cast<std::int64_t>(i)};
        r.title = "Paper " + std::to_string(i) + (i % 7 == 0 ? " on Graph Drawing" : "");
        r.abstract = i % 5 == 0 ? "We study LITERATURE maps." : "An abstract.";
        r.source = kSources[rng() % kSources.size()];
        r.year = 2005 + static_cast<int>(rng() % 15);
        for (std::size_t a = 0, na = 1 + rng() % 3; a < na; ++a) {
            r.authors.push_back(kAuthors[rng() % kAuthors.size()]);
        }
        for (std::size_t k = 0, nk = rng() % 4; k < nk; ++k) {
            r.keywords.push_back(kKeywords[rng() % kKeywords.size()]);
        }
        if (rng() % 4 != 0) {
            r.citation_count = static_cast<std::int64_t>(rng() % 200);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::set<std::int64_t> ids_where(const std::vector<PaperRecord>& corpus, const std::function<bool(const PaperRecord&)>& pred) {
    std::set<std::int64_t> out;
    for (const auto& r : corpus) {
        if (pred(r)) {
            out.insert(to_int(r.id));
        }
    }
    return out;
}

std::set<std::int64_t> as_set(const std::vector<PaperId>& ids) {
    std::set<std::int64_t> out;
    for (auto id : ids) {
        out.insert(to_int(id));
    }
    return out;
}

TEST(ParseFilter, RangeGrammar) {
    EXPECT_EQ((Range{2010, 2020}), *parse_filter({{"year", "2010:2020"}}).year);
    EXPECT_EQ((Range{2010, std::nullopt}), *parse_filter({{"year", "2010:"}}).year);
    EXPECT_EQ((Range{std::nullopt, 2020}), *parse_filter({{"year", ":2020"}}).year);
    EXPECT_EQ((Range{2015, 2015}), *parse_filter({{"year", "2015"}}).year);
    EXPECT_EQ((Range{2012, 2018}), *parse_filter({{"year", "2010:2018"}, {"year", "2012:2020"}}).year);
    EXPECT_EQ((Range{5, 10}), *parse_filter({{"citations", "5:10"}}).citations);
}

TEST(ParseFilter, NominalValuesAccumulate) {
    const auto spec = parse_filter({{"authors", "A"}, {"authors", "B"}, {"keywords", "k"}, {"source", "CHI"}, {"q", "MaPs"}});
    EXPECT_EQ((std::set<std::string>{"A", "B"}), *spec.authors);
    EXPECT_EQ((std::set<std::string>{"k"}), *spec.keywords);
    EXPECT_EQ((std::set<std::string>{"CHI"}), *spec.source);
    EXPECT_EQ((std::vector<std::string>{"maps"}), spec.queries);
    EXPECT_FALSE(spec.empty());
    EXPECT_TRUE(parse_filter({}).empty());
}

TEST(ParseFilter, Errors) {
    try {
        parse_filter({{"venue", "CHI"}});
        FAIL() << "expected UnknownColumn";
    } catch (const UnknownColumn& e) {
        EXPECT_EQ("venue", e.name());
    }
    for (const char* bad : {"", ":", "abc", "1:2:3", "20x0:2010", "1.5"}) {
        EXPECT_THROW(parse_filter({{"year", bad}}), MalformedFilter) << bad;
    }
    EXPECT_THROW(parse_filter({{"authors", ""}}), MalformedFilter);
}

TEST(ApplyFilters, EmptySpecIsIdentity) {
    std::mt19937_64 rng(1);
    const auto corpus = random_corpus(rng, 50);
    EXPECT_EQ(RecordStore(corpus).ids(), apply_filters(corpus, FilterSpec{}));
}

TEST(ApplyFilters, InvertedRangeMatchesNothing) {
    std::mt19937_64 rng(2);
    const auto corpus = random_corpus(rng, 50);
    EXPECT_TRUE(apply_filters(corpus, parse_filter({{"year", "2020:2010"}})).empty());
}

TEST(ApplyFilters, ConjunctionMatchesSetOracle) {
    std::mt19937_64 rng(3);
    const auto corpus = random_corpus(rng, 300);
    const RecordStore store(corpus);
    for (int trial = 0; trial < 300; ++trial) {
        QueryParams params;
        std::vector<std::function<bool(const PaperRecord&)>> preds;
        if (rng() % 2) {
            const int lo = 2005 + static_cast<int>(rng() % 15), hi = lo + static_cast<int>(rng() % 6);
            params.push_back({"year", std::to_string(lo) + ":" + std::to_string(hi)});
            preds.push_back([=](const PaperRecord& r) { return r.year >= lo && r.year <= hi; });
        }
        if (rng() % 3 == 0) {
            const std::int64_t lo = static_cast<std::int64_t>(rng() % 150);
            params.push_back({"citations", std::to_string(lo) + ":"});
            preds.push_back([=](const PaperRecord& r) { return r.citation_count && *r.citation_count >= lo; });
        }
        if (rng() % 2) {
            const auto a = kAuthors[rng() % kAuthors.size()], b = kAuthors[rng() % kAuthors.size()];
            params.push_back({"authors", a});
            params.push_back({"authors", b});
            preds.push_back([=](const PaperRecord& r) {
                return std::find(r.authors.begin(), r.authors.end(), a) != r.authors.end() ||
                       std::find(r.authors.begin(), r.authors.end(), b) != r.authors.end();
            });
        }
        if (rng() % 2) {
            const auto k = kKeywords[rng() % kKeywords.size()];
            params.push_back({"keywords", k});
            preds.push_back([=](const PaperRecord& r) {
                return std::find(r.keywords.begin(), r.keywords.end(), k) != r.keywords.end();
            });
        }
        if (rng() % 3 == 0) {
            const auto s = kSources[rng() % kSources.size()];
            params.push_back({"source", s});
            preds.push_back([=](const PaperRecord& r) { return r.source == s; });
        }
        if (rng() % 4 == 0) {
            params.push_back({"q", "literature"});
            preds.push_back([](const PaperRecord& r) { return r.abstract.find("LITERATURE") != std::string::npos; });
        }

        const auto spec = parse_filter(params);
        const auto got = apply_filters(store, spec);
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        const auto expected = ids_where(corpus, [&](const PaperRecord& r) {
            return std::all_of(preds.begin(), preds.end(), [&](const auto& p) { return p(r); });
        });
        EXPECT_EQ(expected, as_set(got));

        std::set<std::int64_t> intersection = as_set(store.ids());
        for (const auto& [name, value] : params) {
            std::set<std::int64_t> single;
            const auto one = as_set(apply_filters(store, parse_filter({{name, value}})));
            std::set_intersection(intersection.begin(), intersection.end(), one.begin(), one.end(),
                                  std::inserter(single, single.begin()));
            intersection = std::move(single);
        }
        if (std::count_if(params.begin(), params.end(), [](const auto& p) { return p.first == "authors"; }) == 0) {
            EXPECT_EQ(intersection, as_set(got));
        }
    }
}

TEST(ApplyFilters, QueryIsCaseInsensitiveAcrossFields) {
    PaperRecord r;
    r.id = PaperId{1};
    r.title = "Jigsaw";
    r.authors = {"Carsten Gorg"};
    r.keywords = {"Sensemaking"};
    r.abstract = "Investigative analysis.";
    for (const char* q : {"jigsaw", "GORG", "sensemak", "ANALYSIS"}) {
        EXPECT_TRUE(matches(r, parse_filter({{"q", q}}))) << q;
    }
    EXPECT_FALSE(matches(r, parse_filter({{"q", "umap"}})));
}

TEST(ApplyFilters, AuthorFilterOnFixtureManifest) {
    std::vector<PaperRecord> corpus;
    const std::vector<std::vector<std::string>> authors = {
        {"John T. Stasko", "Carsten Gorg"}, {"Youn-ah Kang", "John T. Stasko"}, {"Jane Doe", "Alex Endert"},
        {"Alex Endert"}, {"John T. Stasko"}, {"Bongshin Lee", "John T. Stasko"}};
    for (std::size_t i = 0; i < authors.size(); ++i) {
        PaperRecord r;
        r.id = PaperId{static_cast<std::int64_t>(i)};
        r.authors = authors[i];
        corpus.push_back(r);
    }
    EXPECT_EQ((std::vector<PaperId>{PaperId{0}, PaperId{1}, PaperId{4}, PaperId{5}}),
              apply_filters(corpus, parse_filter({{"authors", "John T. Stasko"}})));
}

TEST(Summarize, CountsPerFacetAndDedupesWithinRecord) {
    std::vector<PaperRecord> corpus(3);
    corpus[0].id = PaperId{0};
    corpus[0].authors = {"A", "B", "A"};
    corpus[0].keywords = {"x", "x"};
    corpus[0].source = "CHI";
    corpus[0].year = 2010;
    corpus[1].id = PaperId{1};
    corpus[1].authors = {"B"};
    corpus[1].keywords = {"y", "x"};
    corpus[1].source = "CHI";
    corpus[1].year = 2011;
    corpus[2].id = PaperId{2};
    corpus[2].authors = {"C"};
    corpus[2].source = "VAST";
    corpus[2].year = 2010;

    const auto s = summarize(corpus);
    EXPECT_EQ(3u, s.records);
    EXPECT_EQ((std::vector<FacetEntry>{{"B", 2}, {"A", 1}, {"C", 1}}), s[Facet::authors].entries);
    EXPECT_EQ((std::vector<FacetEntry>{{"x", 2}, {"y", 1}}), s[Facet::keywords].entries);
    EXPECT_EQ((std::vector<FacetEntry>{{"CHI", 2}, {"VAST", 1}}), s[Facet::source].entries);
    EXPECT_EQ((std::vector<FacetEntry>{{"2010", 2}, {"2011", 1}}), s[Facet::year].entries);
    EXPECT_EQ(3u, s[Facet::authors].distinct_count);

    const auto j = to_json(s, 1);
    EXPECT_EQ(3, j.at("records"));
    EXPECT_EQ(1u, j.at("authors").at("entries").size());
    EXPECT_EQ(3, j.at("authors").at("distinct_count"));
    EXPECT_EQ("B", j.at("authors").at("entries")[0].at("value"));
}

TEST(Summarize, EmptySubset) {
    std::mt19937_64 rng(4);
    const RecordStore store(random_corpus(rng, 20));
    const auto s = summarize(store, std::vector<PaperId>{});
    EXPECT_EQ(0u, s.records);
    for (Facet f : kFacets) {
        EXPECT_TRUE(s[f].entries.empty());
        EXPECT_EQ(0u, s[f].distinct_count);
        EXPECT_EQ(f, s[f].facet);
    }
    EXPECT_THROW(summarize(store, std::vector<PaperId>{PaperId{999}}), std::invalid_argument);
}

TEST(Summarize, CountsAreAdditiveOverDisjointSubsets) {
    std::mt19937_64 rng(5);
    const auto corpus = random_corpus(rng, 200);
    const RecordStore store(corpus);
    const auto all = store.ids();
    std::vector<PaperId> left(all.begin(), all.begin() + 77), right(all.begin() + 77, all.end());
    const auto whole = summarize(store, all);
    const auto a = summarize(store, left);
    const auto b = summarize(store, right);
    EXPECT_EQ(whole.records, a.records + b.records);
    for (Facet f : kFacets) {
        std::map<std::string, std::size_t> sum;
        for (const auto& e : a[f].entries) sum[e.value] += e.count;
        for (const auto& e : b[f].entries) sum[e.value] += e.count;
        std::map<std::string, std::size_t> expected;
        for (const auto& e : whole[f].entries) expected[e.value] = e.count;
        EXPECT_EQ(expected, sum) << facet_name(f);
        EXPECT_EQ(whole[f].distinct_count, expected.size());
    }
}

TEST(RecordStore, SortsAndFinds) {
    std::vector<PaperRecord> records(3);
    records[0].id = PaperId{5};
    records[1].id = PaperId{1};
    records[2].id = PaperId{3};
    const RecordStore store(records);
    EXPECT_EQ((std::vector<PaperId>{PaperId{1}, PaperId{3}, PaperId{5}}), store.ids());
    ASSERT_NE(nullptr, store.find(PaperId{3}));
    EXPECT_EQ(nullptr, store.find(PaperId{4}));
    records[2].id = PaperId{5};
    EXPECT_THROW(RecordStore{records}, Error);
}

}  // namespace
