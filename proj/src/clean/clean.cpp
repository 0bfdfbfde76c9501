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
#include <unordered_set>

#include "litmap/clean/clean.hpp"
#include "litmap/core/io.hpp"

namespace litmap::clean {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalized(std::string_view s) { return trim(normalize_ascii(s)); }

}  // namespace

SynonymMap::SynonymMap(std::map<std::string, std::vector<std::string>> entries) : entries_(std::move(entries)) {
    std::unordered_set<std::string> canonicals;
    for (const auto& [canonical, _] : entries_) {
        canonicals.insert(lower(canonical));
    }
    for (const auto& [canonical, variants] : entries_) {
        if (canonical.empty()) {
            throw InvalidConfig("synonym map: empty canonical keyword");
        }
        const auto own = lower(canonical);
        for (const auto& variant : variants) {
            auto key = lower(variant);
            if (key.empty()) {
                throw InvalidConfig("synonym map: empty variant for " + canonical);
            }
            if (key != own && canonicals.contains(key)) {
                throw InvalidConfig("synonym map: variant '" + variant + "' is itself a canonical keyword");
            }
            if (!by_variant_.emplace(std::move(key), canonical).second) {
                throw InvalidConfig("synonym map: variant '" + variant + "' listed more than once");
            }
        }
    }
}

SynonymMap SynonymMap::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw InvalidConfig("synonym map must be a JSON object");
    }
    std::map<std::string, std::vector<std::string>> entries;
    try {
        for (const auto& [canonical, variants] : doc.items()) {
            entries.emplace(canonical, variants.get<std::vector<std::string>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("synonym map: ") + e.what());
    }
    return SynonymMap(std::move(entries));
}

SynonymMap SynonymMap::load(const std::filesystem::path& path) {
    try {
        return from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidConfig("synonym map " + path.string() + ": " + e.what());
    }
}

std::optional<std::string_view> SynonymMap::canonical_for(std::string_view keyword) const {
    if (auto it = by_variant_.find(lower(keyword)); it != by_variant_.end()) {
        return std::string_view(it->second);
    }
    return std::nullopt;
}

std::vector<std::string> dedupe_and_merge_keywords(std::span<const std::string> keywords,
                                                   const SynonymMap& synonyms, std::size_t* merged) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    std::size_t changes = 0;
    for (const auto& raw : keywords) {
        std::string keyword = trim(raw);
        if (keyword.empty()) {
            ++changes;
            continue;
        }
        if (auto canonical = synonyms.canonical_for(keyword); canonical && *canonical != keyword) {
            keyword = std::string(*canonical);
            ++changes;
        }
        if (!seen.insert(lower(keyword)).second) {
            ++changes;
            continue;
        }
        out.push_back(std::move(keyword));
    }
    if (merged != nullptr) {
        *merged = changes;
    }
    return out;
}

void CleaningConfig::validate() const {
    if (title_len_min == 0 || abstract_len_min == 0) {
        throw InvalidConfig("cleaning: length bounds must be positive");
    }
    if (title_len_min >= title_len_max) {
        throw InvalidConfig("cleaning: title_len_min must be < title_len_max");
    }
    if (abstract_len_min >= abstract_len_max) {
        throw InvalidConfig("cleaning: abstract_len_min must be < abstract_len_max");
    }
}

CleaningConfig cleaning_config_from_json(const nlohmann::json& object, SynonymMap synonyms) {
    CleaningConfig config;
    try {
        config.title_len_min = object.value("title_len_min", config.title_len_min);
        config.title_len_max = object.value("title_len_max", config.title_len_max);
        config.abstract_len_min = object.value("abstract_len_min", config.abstract_len_min);
        config.abstract_len_max = object.value("abstract_len_max", config.abstract_len_max);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("cleaning: ") + e.what());
    }
    config.synonyms = std::move(synonyms);
    config.validate();
    return config;
}

Draft draft_from(const augment::AugmentedRecord& record) {
    const auto& r = record.base.record;
    Draft d;
    d.id = record.base.id;
    d.title = r.title;
    d.authors = r.authors;
    d.source = r.source;
    d.year = r.year;
    d.url = r.url;
    d.abstract = record.metadata.abstract;
    d.keywords = record.metadata.keywords.value_or(std::vector<std::string>{});
    d.citation_count = record.metadata.citation_count;
    return d;
}

Draft draft_from(const PaperRecord& record) {
    Draft d;
    d.id = record.id;
    d.title = record.title;
    d.authors = record.authors;
    d.source = record.source;
    d.year = record.year;
    d.url = record.url;
    d.abstract = record.abstract;
    d.keywords = record.keywords;
    d.citation_count = record.citation_count;
    return d;
}

Retention apply_retention(const Draft& record, const CleaningConfig& config) {
    if (!record.title || record.title->empty()) {
        return {Verdict::drop_null_field, "null title"};
    }
    if (record.authors.empty()) {
        return {Verdict::drop_null_field, "null authors"};
    }
    if (!record.abstract || record.abstract->empty()) {
        return {Verdict::drop_null_field, "null abstract"};
    }
    const auto title_len = record.title->size();
    if (title_len < config.title_len_min || title_len > config.title_len_max) {
        return {Verdict::drop_length, "title length " + std::to_string(title_len)};
    }
    const auto abstract_len = record.abstract->size();
    if (abstract_len < config.abstract_len_min || abstract_len > config.abstract_len_max) {
        return {Verdict::drop_length, "abstract length " + std::to_string(abstract_len)};
    }
    return {};
}

nlohmann::json to_json(const CleanReport& report) {
    return {{"input_count", report.input_count},       {"output_count", report.output_count},
            {"dropped_null", report.dropped_null},     {"dropped_length", report.dropped_length},
            {"keywords_merged", report.keywords_merged}};
}

CleanResult clean_corpus(std::span<const Draft> records, const CleaningConfig& config) {
    CleanResult result;
    auto& report = result.report;
    report.input_count = records.size();
    for (const auto& in : records) {
        Draft d;
        d.id = in.id;
        if (in.title) {
            d.title = normalized(*in.title);
        }
        for (const auto& author : in.authors) {
            if (auto a = normalized(author); !a.empty()) {
                d.authors.push_back(std::move(a));
            }
        }
        d.source = normalized(in.source);
        d.year = in.year;
        d.url = normalized(in.url);
        if (in.abstract) {
            d.abstract = normalized(*in.abstract);
        }
        for (const auto& keyword : in.keywords) {
            d.keywords.push_back(normalized(keyword));
        }
        d.citation_count = in.citation_count;

        const Retention verdict = apply_retention(d, config);
        if (verdict.verdict == Verdict::drop_null_field) {
            ++report.dropped_null;
            continue;
        }
        if (verdict.verdict == Verdict::drop_length) {
            ++report.dropped_length;
            continue;
        }
        std::size_t merged = 0;
        auto keywords = dedupe_and_merge_keywords(d.keywords, config.synonyms, &merged);
        merged -= static_cast<std::size_t>(std::count(d.keywords.begin(), d.keywords.end(), std::string{}));
        report.keywords_merged += merged;

        PaperRecord out;
        out.id = d.id;
        out.title = std::move(*d.title);
        out.authors = std::move(d.authors);
        out.source = std::move(d.source);
        out.year = d.year;
        out.url = std::move(d.url);
        out.abstract = std::move(*d.abstract);
        out.keywords = std::move(keywords);
        out.citation_count = d.citation_count;
        result.records.push_back(std::move(out));
    }
    report.output_count = result.records.size();
    return result;
}

CleanResult clean_corpus(std::span<const augment::AugmentedRecord> records, const CleaningConfig& config) {
    std::vector<Draft> drafts;
    drafts.reserve(records.size());
    for (const auto& r : records) {
        drafts.push_back(draft_from(r));
    }
    return clean_corpus(drafts, config);
}

CleanResult clean_corpus(std::span<const PaperRecord> records, const CleaningConfig& config) {
    std::vector<Draft> drafts;
    drafts.reserve(records.size());
    for (const auto& r : records) {
        drafts.push_back(draft_from(r));
    }
    return clean_corpus(drafts, config);
}

}  // namespace litmap::clean
