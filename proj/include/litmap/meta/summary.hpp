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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/core/record_store.hpp"

namespace litmap::meta {

enum class Facet { keywords, authors, source, year };

inline constexpr std::array<Facet, 4> kFacets = {Facet::keywords, Facet::authors, Facet::source, Facet::year};

std::string_view facet_name(Facet facet) noexcept;

struct FacetEntry {
    std::string value;
    std::size_t count = 0;

    bool operator==(const FacetEntry&) const = default;
};

/// Entries sorted by count desc, value asc.
struct FacetSummary {
    Facet facet = Facet::keywords;
    std::vector<FacetEntry> entries;
    std::size_t distinct_count = 0;

    bool operator==(const FacetSummary&) const = default;
};

struct MetaSummary {
    std::size_t records = 0;
    /// Indexed in kFacets order.
    std::array<FacetSummary, 4> facets;

    const FacetSummary& operator[](Facet facet) const { return facets[static_cast<std::size_t>(facet)]; }
    bool operator==(const MetaSummary&) const = default;
};

/// Counts facet values over the records. An author or keyword repeated
/// within one record counts once for it.
MetaSummary summarize(std::span<const PaperRecord* const> records);
MetaSummary summarize(std::span<const PaperRecord> records);
/// Throws std::invalid_argument for an id not in the corpus.
MetaSummary summarize(const RecordStore& corpus, std::span<const PaperId> subset);

/// {"records": n, "keywords": {"distinct_count": d, "entries": [{"value", "count"}]}, ...}
/// `top` caps the entries listed per facet; 0 lists all.
nlohmann::json to_json(const MetaSummary& summary, std::size_t top = 0);

}  // namespace litmap::meta
