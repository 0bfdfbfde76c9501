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

#include <string>
#include <utility>
#include <vector>

#include "litmap/meta/filter.hpp"
#include "litmap/server/snapshot.hpp"

/// The REST API as pure functions of (snapshot, request). Bodies are compact
/// JSON; identical requests against one snapshot give identical bytes.
///
///   GET  /api/health                      {papers, methods, projection}
///   GET  /api/papers?offset&limit&<filter> {total, offset, limit, papers}
///   POST /api/similarity                  [{paper_id, distance, score, title, source, year}]
///   GET  /api/meta?top&<filter>           {records, keywords, authors, source, year}
///   GET  /api/projection?seeds&outputs&saved&<filter>
///                                         [{paper_id, x, y, state}]
///   POST /api/export                      {papers, rejects}
///
/// Errors carry {error, detail}.
namespace litmap::server {

struct Request {
    std::string method;
    std::string path;
    meta::QueryParams params;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

inline constexpr std::size_t kDefaultK = 25;
inline constexpr std::size_t kDefaultPageSize = 50;
inline constexpr std::size_t kMaxPageSize = 500;

Response handle(const Snapshot& snapshot, const Request& request);

}  // namespace litmap::server
