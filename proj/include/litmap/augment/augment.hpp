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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/augment/extract.hpp"
#include "litmap/augment/fetch.hpp"
#include "litmap/ingest/records.hpp"

namespace litmap::augment {

/// An ingested record with whatever its publisher page yielded.
struct AugmentedRecord {
    ingest::IdentifiedRecord base;
    PageMetadata metadata;
    std::optional<std::string> fetched_at;

    bool operator==(const AugmentedRecord&) const = default;
};

struct AugmentFailure {
    PaperId id{};
    std::string url;
    std::string reason;
};

struct AugmentReport {
    std::size_t processed = 0;
    std::vector<AugmentFailure> failures;
};

/// Fetches and extracts metadata for every record. Per-record failures leave
/// the metadata absent and are reported; output order equals input order.
/// With workers > 1, records are fetched concurrently and the rate limiter
/// keeps each host serialized.
std::vector<AugmentedRecord> augment_corpus(std::span<const ingest::IdentifiedRecord> records,
                                            Fetcher& fetcher, const ProfileSet& profiles,
                                            AugmentReport& report, std::size_t workers = 1);

/// JSON-lines schema: the ingest schema plus
/// {abstract, keywords[], citation_count, fetched_at}; absent values are null.
nlohmann::json to_json(const AugmentedRecord& record);
AugmentedRecord augmented_from_json(const nlohmann::json& object);

}  // namespace litmap::augment
