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

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "litmap/core/record_store.hpp"
#include "litmap/core/types.hpp"

namespace litmap::meta {

/// Inclusive bounds; an absent side is unbounded. lo > hi matches nothing.
struct Range {
    std::optional<std::int64_t> lo;
    std::optional<std::int64_t> hi;

    bool contains(std::int64_t v) const noexcept { return (!lo || v >= *lo) && (!hi || v <= *hi); }
    bool operator==(const Range&) const = default;
};

/// Conjunction of per-column predicates. An absent predicate passes
/// everything.
///
///   year, citations          quantitative, inclusive range
///   source, authors, keywords nominal, a record passes when any of its
///                            values is in the set
///   q                        case-insensitive substring of the title,
///                            abstract, an author or a keyword
struct FilterSpec {
    std::optional<Range> year;
    std::optional<Range> citations;
    std::optional<std::set<std::string>> source;
    std::optional<std::set<std::string>> authors;
    std::optional<std::set<std::string>> keywords;
    std::vector<std::string> queries;

    bool empty() const noexcept;
    bool operator==(const FilterSpec&) const = default;
};

class UnknownColumn : public Error {
   public:
    explicit UnknownColumn(std::string name) : Error("unknown filter column '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

   private:
    std::string name_;
};

class MalformedFilter : public Error {
   public:
    using Error::Error;
};

using QueryParams = std::vector<std::pair<std::string, std::string>>;

/// Builds a FilterSpec from URL query parameters. Ranges are written
/// "lo:hi", "lo:", ":hi" or a single value; repeated ranges intersect and
/// repeated nominal values accumulate. Throws UnknownColumn or
/// MalformedFilter.
FilterSpec parse_filter(const QueryParams& params);

bool matches(const PaperRecord& record, const FilterSpec& spec);

/// Ids of the passing records, ascending.
std::vector<PaperId> apply_filters(const RecordStore& corpus, const FilterSpec& spec);
std::vector<PaperId> apply_filters(std::span<const PaperRecord> corpus, const FilterSpec& spec);

}  // namespace litmap::meta
