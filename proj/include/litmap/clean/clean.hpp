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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/augment/augment.hpp"
#include "litmap/core/types.hpp"

namespace litmap::clean {

/// Transliterates UTF-8 to ASCII: "Görg" -> "Gorg". Codepoints without a
/// table entry, and malformed bytes, are dropped.
std::string normalize_ascii(std::string_view utf8);

class InvalidConfig : public Error {
   public:
    using Error::Error;
};

/// canonical keyword -> variants. Variant lookup ignores case.
class SynonymMap {
   public:
    SynonymMap() = default;
    /// Throws InvalidConfig if a variant is listed twice or names another
    /// entry's canonical form.
    explicit SynonymMap(std::map<std::string, std::vector<std::string>> entries);

    static SynonymMap from_json(const nlohmann::json& doc);
    static SynonymMap load(const std::filesystem::path& path);

    /// Canonical form for `keyword`, if it is a listed variant.
    std::optional<std::string_view> canonical_for(std::string_view keyword) const;

    bool empty() const noexcept { return by_variant_.empty(); }

   private:
    std::map<std::string, std::vector<std::string>> entries_;
    std::unordered_map<std::string, std::string> by_variant_;  // lowercase variant -> canonical
};

/// Replaces listed variants with their canonical form, then keeps the first
/// occurrence of each case-insensitive value. Blank entries are dropped.
/// `merged` (optional) receives the number of entries removed or rewritten.
std::vector<std::string> dedupe_and_merge_keywords(std::span<const std::string> keywords,
                                                   const SynonymMap& synonyms,
                                                   std::size_t* merged = nullptr);

/// Length bounds are inclusive and counted in ASCII bytes after normalization.
struct CleaningConfig {
    std::size_t title_len_min = 5;
    std::size_t title_len_max = 250;
    std::size_t abstract_len_min = 50;
    std::size_t abstract_len_max = 2500;
    SynonymMap synonyms;

    void validate() const;
};

CleaningConfig cleaning_config_from_json(const nlohmann::json& object, SynonymMap synonyms);

/// A record on its way through cleaning.
struct Draft {
    PaperId id{};
    std::optional<std::string> title;
    std::vector<std::string> authors;
    std::string source;
    int year = 0;
    std::string url;
    std::optional<std::string> abstract;
    std::vector<std::string> keywords;
    std::optional<std::int64_t> citation_count;
};

Draft draft_from(const augment::AugmentedRecord& record);
Draft draft_from(const PaperRecord& record);

enum class Verdict { keep, drop_null_field, drop_length };

struct Retention {
    Verdict verdict = Verdict::keep;
    std::string reason;  // empty for keep

    bool kept() const noexcept { return verdict == Verdict::keep; }
};

/// Expects ASCII-normalized fields.
Retention apply_retention(const Draft& record, const CleaningConfig& config);

struct CleanReport {
    std::size_t input_count = 0;
    std::size_t output_count = 0;
    std::size_t dropped_null = 0;
    std::size_t dropped_length = 0;
    std::size_t keywords_merged = 0;

    bool operator==(const CleanReport&) const = default;
};

nlohmann::json to_json(const CleanReport& report);

struct CleanResult {
    std::vector<PaperRecord> records;
    CleanReport report;
};

/// Normalizes every text field, merges keywords and applies retention.
/// Always holds: input_count == output_count + dropped_null + dropped_length.
CleanResult clean_corpus(std::span<const Draft> records, const CleaningConfig& config);
CleanResult clean_corpus(std::span<const augment::AugmentedRecord> records, const CleaningConfig& config);
CleanResult clean_corpus(std::span<const PaperRecord> records, const CleaningConfig& config);

}  // namespace litmap::clean
