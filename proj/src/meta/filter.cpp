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

#include "litmap/meta/filter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace litmap::meta {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool contains_folded(std::string_view haystack, std::string_view folded_needle) {
    if (folded_needle.size() > haystack.size()) {
        return false;
    }
    const auto it = std::search(haystack.begin(), haystack.end(), folded_needle.begin(), folded_needle.end(),
                                [](char h, char n) {
                                    return std::tolower(static_cast<unsigned char>(h)) == static_cast<unsigned char>(n);
                                });
    return it != haystack.end();
}

std::optional<std::int64_t> parse_bound(std::string_view text, std::string_view column) {
    if (text.empty()) {
        return std::nullopt;
    }
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw MalformedFilter("bad bound '" + std::string(text) + "' for " + std::string(column));
    }
    return v;
}

Range parse_range(std::string_view text, std::string_view column) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        if (text.empty()) {
            throw MalformedFilter("empty range for " + std::string(column));
        }
        const auto v = parse_bound(text, column);
        return {v, v};
    }
    if (text.find(':', colon + 1) != std::string_view::npos) {
        throw MalformedFilter("range for " + std::string(column) + " has more than one ':'");
    }
    if (text.size() == 1) {
        throw MalformedFilter("range for " + std::string(column) + " has no bounds");
    }
    return {parse_bound(text.substr(0, colon), column), parse_bound(text.substr(colon + 1), column)};
}

void intersect(std::optional<Range>& slot, const Range& next) {
    if (!slot) {
        slot = next;
        return;
    }
    if (next.lo && (!slot->lo || *next.lo > *slot->lo)) {
        slot->lo = next.lo;
    }
    if (next.hi && (!slot->hi || *next.hi < *slot->hi)) {
        slot->hi = next.hi;
    }
}

void add_value(std::optional<std::set<std::string>>& slot, const std::string& value, std::string_view column) {
    if (value.empty()) {
        throw MalformedFilter("empty value for " + std::string(column));
    }
    if (!slot) {
        slot.emplace();
    }
    slot->insert(value);
}

bool any_in(const std::vector<std::string>& values, const std::set<std::string>& wanted) {
    return std::any_of(values.begin(), values.end(), [&](const std::string& v) { return wanted.contains(v); });
}

bool text_match(const PaperRecord& r, std::string_view folded) {
    if (contains_folded(r.title, folded) || contains_folded(r.abstract, folded)) {
        return true;
    }
    for (const auto& a : r.authors) {
        if (contains_folded(a, folded)) {
            return true;
        }
    }
    for (const auto& k : r.keywords) {
        if (contains_folded(k, folded)) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool FilterSpec::empty() const noexcept {
    return !year && !citations && !source && !authors && !keywords && queries.empty();
}

FilterSpec parse_filter(const QueryParams& params) {
    FilterSpec spec;
    for (const auto& [name, value] : params) {
        if (name == "year") {
            intersect(spec.year, parse_range(value, name));
        } else if (name == "citations") {
            intersect(spec.citations, parse_range(value, name));
        } else if (name == "source") {
            add_value(spec.source, value, name);
        } else if (name == "authors") {
            add_value(spec.authors, value, name);
        } else if (name == "keywords") {
            add_value(spec.keywords, value, name);
        } else if (name == "q") {
            if (!value.empty()) {
                spec.queries.push_back(lower(value));
            }
        } else {
            throw UnknownColumn(name);
        }
    }
    return spec;
}

bool matches(const PaperRecord& record, const FilterSpec& spec) {
    if (spec.year && !spec.year->contains(record.year)) {
        return false;
    }
    if (spec.citations && (!record.citation_count || !spec.citations->contains(*record.citation_count))) {
        return false;
    }
    if (spec.source && !spec.source->contains(record.source)) {
        return false;
    }
    if (spec.authors && !any_in(record.authors, *spec.authors)) {
        return false;
    }
    if (spec.keywords && !any_in(record.keywords, *spec.keywords)) {
        return false;
    }
    for (const auto& q : spec.queries) {
        if (!text_match(record, lower(q))) {
            return false;
        }
    }
    return true;
}

std::vector<PaperId> apply_filters(std::span<const PaperRecord> corpus, const FilterSpec& spec) {
    std::vector<PaperId> ids;
    for (const auto& r : corpus) {
        if (matches(r, spec)) {
            ids.push_back(r.id);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<PaperId> apply_filters(const RecordStore& corpus, const FilterSpec& spec) {
    return apply_filters(corpus.records(), spec);
}

}  // namespace litmap::meta
