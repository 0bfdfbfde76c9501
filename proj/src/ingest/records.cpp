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

#include "litmap/ingest/records.hpp"

#include <algorithm>

#include "litmap/core/io.hpp"

namespace litmap::ingest {

MatchMode parse_match_mode(std::string_view text) {
    if (text == "exact") {
        return MatchMode::exact;
    }
    if (text == "prefix") {
        return MatchMode::prefix;
    }
    throw InvalidVenueFilter("unknown match mode: " + std::string(text));
}

VenueFilter::VenueFilter(std::vector<std::string> descriptors, MatchMode mode)
    : descriptors_(std::move(descriptors)), mode_(mode) {
    if (descriptors_.empty()) {
        throw InvalidVenueFilter("venue filter needs at least one descriptor");
    }
    for (const auto& d : descriptors_) {
        if (d.empty()) {
            throw InvalidVenueFilter("empty venue descriptor");
        }
    }
}

bool VenueFilter::matches(std::string_view source) const {
    for (const auto& d : descriptors_) {
        if (source == d) {
            return true;
        }
        // Track variants continue the descriptor with " (" or " ".
        if (mode_ == MatchMode::prefix && source.size() > d.size() && source.starts_with(d)) {
            const char next = source[d.size()];
            if (next == ' ' || next == '(') {
                return true;
            }
        }
    }
    return false;
}

VenueFilter load_venue_filter(const std::filesystem::path& path, MatchMode mode) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidVenueFilter("venue config " + path.string() + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw InvalidVenueFilter("venue config must be a JSON array of strings");
    }
    std::vector<std::string> descriptors;
    for (const auto& entry : doc) {
        if (!entry.is_string()) {
            throw InvalidVenueFilter("venue config must be a JSON array of strings");
        }
        descriptors.push_back(entry.get<std::string>());
    }
    return VenueFilter(std::move(descriptors), mode);
}

std::vector<RawPublicationRecord> filter_by_venue(std::span<const RawPublicationRecord> records,
                                                  const VenueFilter& filter) {
    std::vector<RawPublicationRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [&](const RawPublicationRecord& r) { return filter.matches(r.source); });
    return out;
}

DuplicateKey::DuplicateKey(std::string key)
    : Error("duplicate dblp key: " + key), key_(std::move(key)) {}

IdentifiedRecord IdAssigner::assign(RawPublicationRecord record) {
    if (!seen_.insert(record.dblp_key).second) {
        throw DuplicateKey(record.dblp_key);
    }
    return IdentifiedRecord{PaperId{next_++}, std::move(record)};
}

std::vector<IdentifiedRecord> assign_ids(std::vector<RawPublicationRecord> records) {
    IdAssigner assigner;
    std::vector<IdentifiedRecord> out;
    out.reserve(records.size());
    for (auto& r : records) {
        out.push_back(assigner.assign(std::move(r)));
    }
    return out;
}

nlohmann::json to_json(const IdentifiedRecord& r) {
    nlohmann::json out = nlohmann::json::object();
    out["id"] = to_int(r.id);
    out["dblp_key"] = r.record.dblp_key;
    out["title"] = r.record.title;
    out["authors"] = r.record.authors;
    out["source"] = r.record.source;
    out["year"] = r.record.year;
    out["url"] = r.record.url;
    return out;
}

IdentifiedRecord identified_from_json(const nlohmann::json& object) {
    try {
        IdentifiedRecord r;
        r.id = PaperId{object.at("id").get<std::int64_t>()};
        r.record.dblp_key = object.at("dblp_key").get<std::string>();
        r.record.title = object.at("title").get<std::string>();
        r.record.authors = object.at("authors").get<std::vector<std::string>>();
        r.record.source = object.at("source").get<std::string>();
        r.record.year = object.at("year").get<int>();
        r.record.url = object.at("url").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad record line: ") + e.what());
    }
}

}  // namespace litmap::ingest
