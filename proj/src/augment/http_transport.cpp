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

#include <httplib.h>

#include "litmap/augment/transport.hpp"

namespace litmap::augment {

std::atomic<std::size_t> HttpTransport::requests_{0};

HttpResponse HttpTransport::get(const std::string& url, const FetchPolicy& policy) {
    const Url parsed = parse_url(url);
    httplib::Client client(parsed.scheme + "://" + parsed.host + ":" + std::to_string(parsed.port));
    const auto timeout = std::chrono::milliseconds(policy.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);
    client.set_default_headers({{"User-Agent", policy.user_agent}});

    ++requests_;
    auto result = client.Get(parsed.target);
    if (!result) {
        const auto err = result.error();
        const bool timed_out = err == httplib::Error::Read || err == httplib::Error::Write ||
                               err == httplib::Error::ConnectionTimeout;
        throw TransportFailure("GET " + url + ": " + httplib::to_string(err), timed_out);
    }
    HttpResponse response;
    response.status = result->status;
    response.body = std::move(result->body);
    response.final_url = result->location.empty() ? url : result->location;
    response.fetched_at = utc_timestamp_now();
    return response;
}

}  // namespace litmap::augment
