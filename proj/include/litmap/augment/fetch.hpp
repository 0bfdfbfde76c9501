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

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

namespace litmap::augment {

/// Politeness and robustness knobs for page fetching.
struct FetchPolicy {
    std::int64_t min_interval_ms = 1000;  // per host
    int max_retries = 3;
    std::int64_t timeout_ms = 10000;
    std::string user_agent = "litmap/1.0 (+literature corpus builder)";

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

FetchPolicy fetch_policy_from_json(const nlohmann::json& object);

struct Url {
    std::string scheme;  // "http" or "https"
    std::string host;    // lowercase
    int port = 0;
    std::string target;  // path and query, at least "/"
};

class InvalidUrl : public Error {
   public:
    using Error::Error;
};

/// Parses an absolute http(s) URL.
Url parse_url(std::string_view url);

struct HttpResponse {
    int status = 0;
    std::string body;
    std::string final_url;                  // after redirects
    std::optional<std::string> fetched_at;  // ISO-8601 UTC
};

/// Raised by transports when no HTTP response arrived at all.
class TransportFailure : public Error {
   public:
    TransportFailure(const std::string& what, bool timed_out) : Error(what), timed_out_(timed_out) {}
    bool timed_out() const noexcept { return timed_out_; }

   private:
    bool timed_out_;
};

class Timeout : public Error {
   public:
    explicit Timeout(const std::string& url) : Error("timed out fetching " + url) {}
};

class HttpStatus : public Error {
   public:
    HttpStatus(const std::string& url, int code)
        : Error("HTTP " + std::to_string(code) + " for " + url), code_(code) {}
    int code() const noexcept { return code_; }

   private:
    int code_;
};

class FixtureMiss : public Error {
   public:
    explicit FixtureMiss(std::string url) : Error("no fixture for " + url), url_(std::move(url)) {}
    const std::string& url() const noexcept { return url_; }

   private:
    std::string url_;
};

/// Where page bytes come from: live HTTP or a fixture store.
class Transport {
   public:
    virtual ~Transport() = default;
    virtual HttpResponse get(const std::string& url, const FetchPolicy& policy) = 0;
};

/// Serializes requests per host and spaces them at least `min_interval`
/// apart, measured from the end of one request to the start of the next.
class RateLimiter {
    struct Slot;

   public:
    explicit RateLimiter(std::chrono::milliseconds min_interval);
    ~RateLimiter();
    RateLimiter(const RateLimiter&) = delete;
    RateLimiter& operator=(const RateLimiter&) = delete;

    class Permit {
       public:
        Permit(Permit&&) noexcept = default;
        Permit& operator=(Permit&&) = delete;
        ~Permit();

       private:
        friend class RateLimiter;
        Permit(Slot* slot, std::unique_lock<std::mutex> lock) : slot_(slot), lock_(std::move(lock)) {}
        Slot* slot_;
        std::unique_lock<std::mutex> lock_;
    };

    /// Blocks until a request to `host` may start; the host stays reserved
    /// until the permit is destroyed.
    Permit acquire(const std::string& host);

   private:
    std::chrono::milliseconds min_interval_;
    std::mutex map_mutex_;
    std::map<std::string, std::unique_ptr<Slot>> slots_;
};

struct FetchResult {
    HttpResponse response;
    std::chrono::milliseconds latency{0};
    int attempts = 0;
};

/// Rate-limited, retrying page fetcher over a transport.
///
/// Timeouts, 429 and 5xx responses are retried up to `max_retries` times;
/// other non-2xx codes fail at once. FixtureMiss is never retried.
class Fetcher {
   public:
    Fetcher(FetchPolicy policy, Transport& transport);

    FetchResult fetch(const std::string& url);

    const FetchPolicy& policy() const noexcept { return policy_; }

   private:
    FetchPolicy policy_;
    Transport& transport_;
    RateLimiter limiter_;
};

/// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp_now();

}  // namespace litmap::augment
