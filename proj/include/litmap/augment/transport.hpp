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
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "litmap/augment/fetch.hpp"

namespace litmap::augment {

/// Directory of saved pages. Each body lives in a file named by the SHA-256
/// of its URL; index.json maps every URL to its entry:
///
///   {"https://...": {"file": "<sha>.html", "status": 200,
///                    "final_url": "...", "fetched_at": "..."}}
class FixtureStore {
   public:
    struct Entry {
        std::string file;
        int status = 200;
        std::string final_url;
        std::optional<std::string> fetched_at;
    };

    /// Opens an existing store; a missing index reads as an empty store.
    explicit FixtureStore(std::filesystem::path dir);

    std::optional<Entry> find(const std::string& url) const;
    std::string read_body(const Entry& entry) const;

    /// Adds or replaces a page and rewrites index.json.
    void put(const std::string& url, std::string_view body, int status = 200,
             std::optional<std::string> fetched_at = std::nullopt, std::string final_url = {});

    std::size_t size() const noexcept { return entries_.size(); }
    const std::filesystem::path& dir() const noexcept { return dir_; }

   private:
    std::filesystem::path dir_;
    std::map<std::string, Entry> entries_;
};

/// Offline transport; a URL not in the store raises FixtureMiss.
class FixtureTransport final : public Transport {
   public:
    explicit FixtureTransport(FixtureStore store) : store_(std::move(store)) {}

    HttpResponse get(const std::string& url, const FetchPolicy& policy) override;

   private:
    FixtureStore store_;
};

/// Live HTTP(S) transport. Follows redirects.
class HttpTransport final : public Transport {
   public:
    HttpResponse get(const std::string& url, const FetchPolicy& policy) override;

    /// Requests issued by every HttpTransport in this process.
    static std::size_t requests_issued() noexcept { return requests_.load(); }

   private:
    static std::atomic<std::size_t> requests_;
};

}  // namespace litmap::augment
