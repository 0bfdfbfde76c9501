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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/ingest/bibliography.hpp"

namespace litmap::ingest {

enum class MatchMode { exact, prefix };

MatchMode parse_match_mode(std::string_view text);

class InvalidVenueFilter : public Error {
   public:
    using Error::Error;
};

/// Set of venue descriptors. In prefix mode a descriptor also matches its
/// DBLP track variants: "Interact" matches "Interact (1)" and "Interact (2)".
class VenueFilter {
   public:
    VenueFilter(std::vector<std::string> descriptors, MatchMode mode = MatchMode::prefix);

    bool matches(std::string_view source) const;

    const std::vector<std::string>& descriptors() const noexcept { return descriptors_; }
    MatchMode mode() const noexcept { return mode_; }

   private:
    std::vector<std::string> descriptors_;
    MatchMode mode_;
};

/// Venue config: a JSON array of descriptor strings.
VenueFilter load_venue_filter(const std::filesystem::path& path, MatchMode mode = MatchMode::prefix);

std::vector<RawPublicationRecord> filter_by_venue(std::span<const RawPublicationRecord> records,
                                                  const VenueFilter& filter);

struct IdentifiedRecord {
    PaperId id{};
    RawPublicationRecord record;

    bool operator==(const IdentifiedRecord&) const = default;
};

class DuplicateKey : public Error {
   public:
    explicit DuplicateKey(std::string key);
    const std::string& key() const noexcept { return key_; }

   private:
    std::string key_;
};

/// Hands out dense ids 0, 1, 2, ... in call order.
class IdAssigner {
   public:
    IdentifiedRecord assign(RawPublicationRecord record);

   private:
    std::unordered_set<std::string> seen_;
    std::int64_t next_ = 0;
};

std::vector<IdentifiedRecord> assign_ids(std::vector<RawPublicationRecord> records);

/// JSON-lines schema: {id, dblp_key, title, authors[], source, year, url}.
nlohmann::json to_json(const IdentifiedRecord& record);
IdentifiedRecord identified_from_json(const nlohmann::json& object);

}  // namespace litmap::ingest
