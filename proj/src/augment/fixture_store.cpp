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

#include <fstream>

#include "litmap/augment/transport.hpp"
#include "litmap/core/hash.hpp"
#include "litmap/core/io.hpp"

namespace litmap::augment {

namespace {
constexpr const char* kIndexName = "index.json";
}

FixtureStore::FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    const auto index_path = dir_ / kIndexName;
    if (!std::filesystem::exists(index_path)) {
        return;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(index_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("fixture index " + index_path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw IoError("fixture index must be a JSON object: " + index_path.string());
    }
    for (const auto& [url, value] : doc.items()) {
        Entry entry;
        entry.file = value.at("file").get<std::string>();
        entry.status = value.value("status", 200);
        entry.final_url = value.value("final_url", std::string{});
        if (auto it = value.find("fetched_at"); it != value.end() && it->is_string()) {
            entry.fetched_at = it->get<std::string>();
        }
        entries_.emplace(url, std::move(entry));
    }
}

std::optional<FixtureStore::Entry> FixtureStore::find(const std::string& url) const {
    if (auto it = entries_.find(url); it != entries_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::string FixtureStore::read_body(const Entry& entry) const {
    if (entry.file.empty()) {
        return {};
    }
    return read_file(dir_ / entry.file);
}

void FixtureStore::put(const std::string& url, std::string_view body, int status,
                       std::optional<std::string> fetched_at, std::string final_url) {
    std::filesystem::create_directories(dir_);
    Entry entry;
    entry.file = sha256_hex(url) + ".html";
    entry.status = status;
    entry.final_url = std::move(final_url);
    entry.fetched_at = std::move(fetched_at);
    write_file_atomic(dir_ / entry.file, body);
    entries_[url] = std::move(entry);

    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [key, e] : entries_) {
        nlohmann::json value = {{"file", e.file}, {"status", e.status}};
        if (!e.final_url.empty()) {
            value["final_url"] = e.final_url;
        }
        if (e.fetched_at) {
            value["fetched_at"] = *e.fetched_at;
        }
        doc[key] = std::move(value);
    }
    write_file_atomic(dir_ / kIndexName, doc.dump(1) + "\n");
}

HttpResponse FixtureTransport::get(const std::string& url, const FetchPolicy& /*policy*/) {
    auto entry = store_.find(url);
    if (!entry) {
        throw FixtureMiss(url);
    }
    HttpResponse response;
    response.status = entry->status;
    response.body = store_.read_body(*entry);
    response.final_url = entry->final_url.empty() ? url : entry->final_url;
    response.fetched_at = entry->fetched_at;
    return response;
}

}  // namespace litmap::augment
