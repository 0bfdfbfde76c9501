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

#include "litmap/meta/summary.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace litmap::meta {
namespace {

FacetSummary finish(Facet facet, const std::unordered_map<std::string, std::size_t>& counts) {
    FacetSummary summary;
    summary.facet = facet;
    summary.distinct_count = counts.size();
    summary.entries.reserve(counts.size());
    for (const auto& [value, count] : counts) {
        summary.entries.push_back({value, count});
    }
    std::sort(summary.entries.begin(), summary.entries.end(), [](const FacetEntry& a, const FacetEntry& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.value < b.value;
    });
    return summary;
}

void count_once(std::unordered_map<std::string, std::size_t>& counts, const std::vector<std::string>& values) {
    if (values.size() < 2) {
        for (const auto& v : values) {
            ++counts[v];
        }
        return;
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& v : values) {
        if (seen.insert(v).second) {
            ++counts[v];
        }
    }
}

}  // namespace

std::string_view facet_name(Facet facet) noexcept {
    switch (facet) {
        case Facet::keywords:
            return "keywords";
        case Facet::authors:
            return "authors";
        case Facet::source:
            return "source";
        case Facet::year:
            return "year";
    }
    return "unknown";
}

MetaSummary summarize(std::span<const PaperRecord* const> records) {
    std::unordered_map<std::string, std::size_t> keywords, authors, source, year;
    for (const PaperRecord* r : records) {
        count_once(keywords, r->keywords);
        count_once(authors, r->authors);
        ++source[r->source];
        ++year[std::to_string(r->year)];
    }
    MetaSummary summary;
    summary.records = records.size();
    summary.facets = {finish(Facet::keywords, keywords), finish(Facet::authors, authors),
                      finish(Facet::source, source), finish(Facet::year, year)};
    return summary;
}

MetaSummary summarize(std::span<const PaperRecord> records) {
    std::vector<const PaperRecord*> ptrs;
    ptrs.reserve(records.size());
    for (const auto& r : records) {
        ptrs.push_back(&r);
    }
    return summarize(ptrs);
}

MetaSummary summarize(const RecordStore& corpus, std::span<const PaperId> subset) {
    std::vector<const PaperRecord*> ptrs;
    ptrs.reserve(subset.size());
    for (PaperId id : subset) {
        const PaperRecord* r = corpus.find(id);
        if (r == nullptr) {
            throw std::invalid_argument("paper id " + std::to_string(to_int(id)) + " not in corpus");
        }
        ptrs.push_back(r);
    }
    return summarize(ptrs);
}

nlohmann::json to_json(const MetaSummary& summary, std::size_t top) {
    nlohmann::json out = nlohmann::json::object();
    out["records"] = summary.records;
    for (const auto& facet : summary.facets) {
        nlohmann::json entries = nlohmann::json::array();
        const std::size_t n = top == 0 ? facet.entries.size() : std::min(top, facet.entries.size());
        for (std::size_t i = 0; i < n; ++i) {
            entries.push_back({{"value", facet.entries[i].value}, {"count", facet.entries[i].count}});
        }
        out[std::string(facet_name(facet.facet))] = {{"distinct_count", facet.distinct_count},
                                                     {"entries", std::move(entries)}};
    }
    return out;
}

}  // namespace litmap::meta
