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

#include "litmap/embed/remote.hpp"

#include <httplib.h>

#include <cmath>
#include <unordered_set>

#include "litmap/augment/fetch.hpp"
#include "litmap/core/hash.hpp"
#include "litmap/core/io.hpp"

namespace litmap::embed {
namespace {

constexpr const char* kFixtureFile = "vectors.json";

std::optional<std::vector<double>> finite_vector(const nlohmann::json& value) {
    if (!value.is_array() || value.empty()) {
        return std::nullopt;
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& x : value) {
        if (!x.is_number()) {
            return std::nullopt;
        }
        const double v = x.get<double>();
        if (!std::isfinite(v)) {
            return std::nullopt;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::string content_hash(std::string_view title, std::string_view abstract) {
    std::string key = std::to_string(title.size());
    key += ':';
    key += title;
    key += abstract;
    return sha256_hex(key);
}

HttpEmbeddingBackend::HttpEmbeddingBackend(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
    augment::parse_url(endpoint_);
}

std::vector<BackendItem> HttpEmbeddingBackend::embed_batch(std::span<const RemoteRequest> batch) {
    const auto url = augment::parse_url(endpoint_);
    httplib::Client client(url.scheme + "://" + url.host + ":" + std::to_string(url.port));
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);

    nlohmann::json body = nlohmann::json::array();
    for (const auto& r : batch) {
        body.push_back({{"paper_id", to_int(r.paper_id)}, {"title", r.title}, {"abstract", r.abstract}});
    }
    auto result = client.Post(url.target, body.dump(), "application/json");
    if (!result) {
        throw RemoteUnavailable("embedding service unreachable: " + httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw RemoteUnavailable("embedding service returned HTTP " + std::to_string(result->status));
    }
    nlohmann::json reply;
    try {
        reply = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw RemoteUnavailable(std::string("embedding service sent invalid JSON: ") + e.what());
    }
    if (!reply.is_array()) {
        throw RemoteUnavailable("embedding service reply is not an array");
    }
    std::unordered_map<std::int64_t, const nlohmann::json*> by_id;
    for (const auto& item : reply) {
        if (item.is_object() && item.contains("paper_id") && item["paper_id"].is_number_integer()) {
            by_id.emplace(item["paper_id"].get<std::int64_t>(), &item);
        }
    }
    std::vector<BackendItem> out;
    out.reserve(batch.size());
    for (const auto& r : batch) {
        BackendItem item{r.paper_id, std::nullopt, {}};
        auto it = by_id.find(to_int(r.paper_id));
        if (it == by_id.end()) {
            item.error = "missing from service reply";
        } else if (auto v = finite_vector(it->second->value("embedding", nlohmann::json()))) {
            item.embedding = std::move(v);
        } else {
            item.error = it->second->value("error", std::string("no usable embedding in reply"));
        }
        out.push_back(std::move(item));
    }
    return out;
}

FixtureEmbeddingBackend::FixtureEmbeddingBackend(const std::filesystem::path& dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(dir / kFixtureFile));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("embedding fixtures " + dir.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw Error("embedding fixtures must be a JSON object");
    }
    for (auto& [key, value] : doc.items()) {
        entries_.emplace(key, value);
    }
}

FixtureEmbeddingBackend::FixtureEmbeddingBackend(std::unordered_map<std::string, nlohmann::json> entries)
    : entries_(std::move(entries)) {}

std::vector<BackendItem> FixtureEmbeddingBackend::embed_batch(std::span<const RemoteRequest> batch) {
    std::vector<BackendItem> out;
    out.reserve(batch.size());
    for (const auto& r : batch) {
        ++items_served_;
        BackendItem item{r.paper_id, std::nullopt, {}};
        auto it = entries_.find(content_hash(r.title, r.abstract));
        if (it == entries_.end()) {
            item.error = "no fixture for content";
        } else if (auto v = finite_vector(it->second.value("embedding", nlohmann::json()))) {
            item.embedding = std::move(v);
        } else {
            item.error = it->second.value("error", std::string("fixture has no usable embedding"));
        }
        out.push_back(std::move(item));
    }
    return out;
}

void FixtureEmbeddingBackend::write(const std::filesystem::path& dir,
                                    const std::unordered_map<std::string, nlohmann::json>& entries) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [key, value] : entries) {
        doc[key] = value;
    }
    write_file_atomic(dir / kFixtureFile, doc.dump(1) + "\n");
}

RemoteEmbedder::RemoteEmbedder(EmbeddingBackend& backend, RemoteConfig config)
    : backend_(backend), config_(config) {
    if (config_.batch_size == 0) {
        throw std::invalid_argument("remote embedder: batch_size must be > 0");
    }
}

std::size_t RemoteEmbedder::dims() const {
    std::lock_guard lock(mutex_);
    return config_.dims;
}

std::vector<RemoteEmbedder::Resolved> RemoteEmbedder::resolve(std::span<const RemoteRequest> requests) {
    std::lock_guard lock(mutex_);
    std::vector<std::string> hashes;
    hashes.reserve(requests.size());
    for (const auto& r : requests) {
        hashes.push_back(content_hash(r.title, r.abstract));
    }

    std::unordered_map<std::string, ItemError> errors;
    std::vector<std::size_t> pending;
    {
        std::unordered_set<std::string> queued;
        for (std::size_t i = 0; i < requests.size(); ++i) {
            if (!cache_.contains(hashes[i]) && queued.insert(hashes[i]).second) {
                pending.push_back(i);
            }
        }
    }

    std::size_t next = 0;
    while (next < pending.size()) {
        std::vector<RemoteRequest> batch;
        std::vector<std::size_t> members;
        std::unordered_set<std::int64_t> ids;
        while (next < pending.size() && batch.size() < config_.batch_size &&
               !ids.contains(to_int(requests[pending[next]].paper_id))) {
            ids.insert(to_int(requests[pending[next]].paper_id));
            batch.push_back(requests[pending[next]]);
            members.push_back(pending[next]);
            ++next;
        }
        upstream_items_ += batch.size();
        std::vector<BackendItem> reply;
        try {
            reply = backend_.embed_batch(batch);
        } catch (const RemoteUnavailable& e) {
            for (auto m : members) {
                errors[hashes[m]] = ItemError{e.what(), std::nullopt};
            }
            continue;
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            const auto& hash = hashes[members[k]];
            if (k >= reply.size() || !reply[k].embedding) {
                errors[hash] = ItemError{k < reply.size() ? reply[k].error : "missing from service reply", std::nullopt};
                continue;
            }
            const std::size_t got = reply[k].embedding->size();
            if (config_.dims == 0) {
                config_.dims = got;
            }
            if (got != config_.dims) {
                errors[hash] = ItemError{DimensionMismatch(config_.dims, got).what(), std::pair(config_.dims, got)};
                continue;
            }
            cache_[hash] = std::move(*reply[k].embedding);
        }
    }

    std::vector<Resolved> out;
    out.reserve(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        if (auto it = cache_.find(hashes[i]); it != cache_.end()) {
            out.emplace_back(it->second);
        } else if (auto e = errors.find(hashes[i]); e != errors.end()) {
            out.emplace_back(e->second);
        } else {
            out.emplace_back(ItemError{"not embedded", std::nullopt});
        }
    }
    return out;
}

std::vector<RemoteOutcome> RemoteEmbedder::embed_all(std::span<const RemoteRequest> requests) {
    std::vector<RemoteOutcome> out;
    for (auto& r : resolve(requests)) {
        if (auto* v = std::get_if<std::vector<double>>(&r)) {
            out.emplace_back(std::move(*v));
        } else {
            out.emplace_back(std::get<ItemError>(r).message);
        }
    }
    return out;
}

std::vector<double> RemoteEmbedder::embed(std::string_view title, std::string_view abstract) {
    const RemoteRequest request{PaperId{-1}, std::string(title), std::string(abstract)};
    auto resolved = resolve(std::span(&request, 1)).front();
    if (auto* v = std::get_if<std::vector<double>>(&resolved)) {
        return std::move(*v);
    }
    const auto& error = std::get<ItemError>(resolved);
    if (error.dims) {
        throw DimensionMismatch(error.dims->first, error.dims->second);
    }
    throw RemoteUnavailable(error.message);
}

}  // namespace litmap::embed
