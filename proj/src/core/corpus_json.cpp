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

#include "litmap/core/corpus_json.hpp"

#include <fstream>

#include "litmap/core/io.hpp"

namespace litmap {

using nlohmann::json;

json to_corpus_json(const PaperRecord& record) {
    json out = json::object();
    out["ID"] = to_int(record.id);
    out["Title"] = record.title;
    out["Authors"] = record.authors;
    out["Source"] = record.source;
    out["Year"] = record.year;
    out["URL"] = record.url;
    out["Abstract"] = record.abstract;
    out["Keywords"] = record.keywords;
    out["CitationCounts"] = record.citation_count ? json(*record.citation_count) : json(nullptr);
    return out;
}

PaperRecord from_corpus_json(const json& object) {
    if (!object.is_object()) {
        throw CorpusFormatError("corpus entry is not an object");
    }
    PaperRecord record;
    try {
        record.id = PaperId{object.at("ID").get<std::int64_t>()};
        record.title = object.at("Title").get<std::string>();
        record.authors = object.at("Authors").get<std::vector<std::string>>();
        record.source = object.at("Source").get<std::string>();
        record.year = object.at("Year").get<int>();
        record.url = object.value("URL", std::string{});
        record.abstract = object.at("Abstract").get<std::string>();
        if (auto it = object.find("Keywords"); it != object.end() && !it->is_null()) {
            record.keywords = it->get<std::vector<std::string>>();
        }
        if (auto it = object.find("CitationCounts"); it != object.end() && !it->is_null()) {
            record.citation_count = it->get<std::int64_t>();
        }
    } catch (const json::exception& e) {
        throw CorpusFormatError(std::string("bad corpus entry: ") + e.what());
    }
    return record;
}

std::vector<PaperRecord> parse_corpus(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CorpusFormatError(std::string("corpus is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw CorpusFormatError("corpus JSON must be an array");
    }
    std::vector<PaperRecord> records;
    records.reserve(doc.size());
    for (const auto& entry : doc) {
        records.push_back(from_corpus_json(entry));
    }
    return records;
}

std::vector<PaperRecord> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return parse_corpus(in);
}

std::string dump_corpus(std::span<const PaperRecord> records) {
    json doc = json::array();
    for (const auto& record : records) {
        doc.push_back(to_corpus_json(record));
    }
    return doc.dump(1) + "\n";
}

void write_corpus(const std::filesystem::path& path, std::span<const PaperRecord> records) {
    write_file_atomic(path, dump_corpus(records));
}

}  // namespace litmap
