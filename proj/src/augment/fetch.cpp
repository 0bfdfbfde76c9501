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

#include "litmap/augment/fetch.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <stdexcept>
#include <thread>

namespace litmap::augment {

using Clock = std::chrono::steady_clock;

void FetchPolicy::validate() const {
    if (min_interval_ms < 0) {
        throw std::invalid_argument("fetch policy: min_interval_ms must be >= 0");
    }
    if (max_retries < 0) {
        throw std::invalid_argument("fetch policy: max_retries must be >= 0");
    }
    if (timeout_ms <= 0) {
        throw std::invalid_argument("fetch policy: timeout_ms must be > 0");
    }
}

FetchPolicy fetch_policy_from_json(const nlohmann::json& object) {
    FetchPolicy policy;
    policy.min_interval_ms = object.value("min_interval_ms", policy.min_interval_ms);
    policy.max_retries = object.value("max_retries", policy.max_retries);
    policy.timeout_ms = object.value("timeout_ms", policy.timeout_ms);
    policy.user_agent = object.value("user_agent", policy.user_agent);
    policy.validate();
    return policy;
}

Url parse_url(std::string_view url) {
    Url out;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        throw InvalidUrl("not an absolute URL: " + std::string(url));
    }
    out.scheme = std::string(url.substr(0, scheme_end));
    std::transform(out.scheme.begin(), out.scheme.end(), out.scheme.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (out.scheme != "http" && out.scheme != "https") {
        throw InvalidUrl("unsupported scheme: " + std::string(url));
    }
    std::string_view rest = url.substr(scheme_end + 3);
    const auto path_start = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, path_start);
    if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
        authority = authority.substr(at + 1);
    }
    out.port = out.scheme == "https" ? 443 : 80;
    if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
        const auto port_text = authority.substr(colon + 1);
        if (port_text.empty() || !std::all_of(port_text.begin(), port_text.end(),
                                              [](char c) { return c >= '0' && c <= '9'; })) {
            throw InvalidUrl("bad port in " + std::string(url));
        }
        out.port = std::stoi(std::string(port_text));
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) {
        throw InvalidUrl("missing host in " + std::string(url));
    }
    out.host = std::string(authority);
    std::transform(out.host.begin(), out.host.end(), out.host.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.target = path_start == std::string_view::npos ? "/" : std::string(rest.substr(path_start));
    if (const auto hash = out.target.find('#'); hash != std::string::npos) {
        out.target.erase(hash);
    }
    if (out.target.empty() || out.target.front() != '/') {
        out.target.insert(out.target.begin(), '/');
    }
    return out;
}

struct RateLimiter::Slot {
    std::mutex mutex;
    std::optional<Clock::time_point> last_release;
    std::chrono::milliseconds interval{0};
};

RateLimiter::RateLimiter(std::chrono::milliseconds min_interval) : min_interval_(min_interval) {}

RateLimiter::~RateLimiter() = default;

RateLimiter::Permit::~Permit() {
    if (lock_.owns_lock()) {
        slot_->last_release = Clock::now();
    }
}

RateLimiter::Permit RateLimiter::acquire(const std::string& host) {
    Slot* slot = nullptr;
    {
        std::lock_guard guard(map_mutex_);
        auto& entry = slots_[host];
        if (!entry) {
            entry = std::make_unique<Slot>();
            entry->interval = min_interval_;
        }
        slot = entry.get();
    }
    std::unique_lock lock(slot->mutex);
    if (slot->last_release) {
        std::this_thread::sleep_until(*slot->last_release + slot->interval);
    }
    return Permit(slot, std::move(lock));
}

Fetcher::Fetcher(FetchPolicy policy, Transport& transport)
    : policy_(std::move(policy)), transport_(transport),
      limiter_(std::chrono::milliseconds(policy_.min_interval_ms)) {
    policy_.validate();
}

FetchResult Fetcher::fetch(const std::string& url) {
    const Url parsed = parse_url(url);
    FetchResult result;
    const auto started = Clock::now();
    const int budget = 1 + policy_.max_retries;
    for (int attempt = 1; attempt <= budget; ++attempt) {
        result.attempts = attempt;
        const bool last = attempt == budget;
        try {
            auto permit = limiter_.acquire(parsed.host);
            result.response = transport_.get(url, policy_);
        } catch (const TransportFailure& e) {
            if (last) {
                if (e.timed_out()) {
                    throw Timeout(url);
                }
                throw;
            }
            continue;
        }
        const int status = result.response.status;
        if (status >= 200 && status < 300) {
            result.latency = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
            if (result.response.final_url.empty()) {
                result.response.final_url = url;
            }
            return result;
        }
        const bool retryable = status == 429 || status >= 500;
        if (!retryable || last) {
            throw HttpStatus(url, status);
        }
    }
    throw HttpStatus(url, result.response.status);
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

}  // namespace litmap::augment
