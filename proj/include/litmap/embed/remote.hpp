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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

namespace litmap::embed {

struct RemoteRequest {
    PaperId paper_id{};
    std::string title;
    std::string abstract;
};

/// Cache and fixture key for a (title, abstract) pair.
std::string content_hash(std::string_view title, std::string_view abstract);

class RemoteUnavailable : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public Error {
   public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("embedding has " + std::to_string(got) + " dims, expected " + std::to_string(expected)),
          expected_(expected),
          got_(got) {}
    std::size_t expected() const noexcept { return expected_; }
    std::size_t got() const noexcept { return got_; }

   private:
    std::size_t expected_;
    std::size_t got_;
};

/// One item of a backend reply: the vector, or why this item failed.
struct BackendItem {
    PaperId paper_id{};
    std::optional<std::vector<double>> embedding;
    std::string error;
};

/// The embedding service. A whole-batch failure throws RemoteUnavailable;
/// per-item failures come back as items without an embedding.
class EmbeddingBackend {
   public:
    virtual ~EmbeddingBackend() = default;
    virtual std::vector<BackendItem> embed_batch(std::span<const RemoteRequest> batch) = 0;
};

/// POSTs [{paper_id, title, abstract}] and reads [{paper_id, embedding}].
class HttpEmbeddingBackend final : public EmbeddingBackend {
   public:
    HttpEmbeddingBackend(std::string endpoint, std::chrono::milliseconds timeout);
    std::vector<BackendItem> embed_batch(std::span<const RemoteRequest> batch) override;

   private:
    std::string endpoint_;
    std::chrono::milliseconds timeout_;
};

/// Offline backend over a directory holding vectors.json:
///   {"<content_hash>": {"embedding": [...]} | {"error": "..."}}
class FixtureEmbeddingBackend final : public EmbeddingBackend {
   public:
    explicit FixtureEmbeddingBackend(const std::filesystem::path& dir);
    FixtureEmbeddingBackend(std::unordered_map<std::string, nlohmann::json> entries);

    std::vector<BackendItem> embed_batch(std::span<const RemoteRequest> batch) override;

    /// Items looked up so far.
    std::size_t items_served() const noexcept { return items_served_.load(); }

    static void write(const std::filesystem::path& dir,
                      const std::unordered_map<std::string, nlohmann::json>& entries);

   private:
    std::unordered_map<std::string, nlohmann::json> entries_;
    std::atomic<std::size_t> items_served_{0};
};

struct RemoteConfig {
    std::size_t batch_size = 16;
    /// 0 = take the dimensionality of the first vector received.
    std::size_t dims = 0;
};

using RemoteOutcome = std::variant<std::vector<double>, std::string>;

/// Batching, memoizing client in front of an EmbeddingBackend.
class RemoteEmbedder {
   public:
    RemoteEmbedder(EmbeddingBackend& backend, RemoteConfig config);

    /// Throws RemoteUnavailable or DimensionMismatch.
    std::vector<double> embed(std::string_view title, std::string_view abstract);

    /// One outcome per request, in order: a vector or an error message. A
    /// failing item never aborts the rest of its batch.
    std::vector<RemoteOutcome> embed_all(std::span<const RemoteRequest> requests);

    /// Items sent upstream so far.
    std::size_t upstream_items() const noexcept { return upstream_items_.load(); }
    std::size_t dims() const;

   private:
    struct ItemError {
        std::string message;
        std::optional<std::pair<std::size_t, std::size_t>> dims;  // expected, got
    };
    using Resolved = std::variant<std::vector<double>, ItemError>;

    std::vector<Resolved> resolve(std::span<const RemoteRequest> requests);

    EmbeddingBackend& backend_;
    RemoteConfig config_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::vector<double>> cache_;
    std::atomic<std::size_t> upstream_items_{0};
};

}  // namespace litmap::embed
