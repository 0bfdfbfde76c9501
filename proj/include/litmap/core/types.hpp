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

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace litmap {

/// Dense, stable paper identifier assigned at ingest.
enum class PaperId : std::int64_t {};

constexpr std::int64_t to_int(PaperId id) noexcept { return static_cast<std::int64_t>(id); }

/// Base of every error the library throws.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A cleaned publication: the eight corpus attributes plus its citation count.
struct PaperRecord {
    PaperId id{};
    std::string title;
    std::vector<std::string> authors;
    std::string source;
    int year = 0;
    std::string url;
    std::string abstract;
    std::vector<std::string> keywords;
    std::optional<std::int64_t> citation_count;

    bool operator==(const PaperRecord&) const = default;
};

}  // namespace litmap

template <>
struct std::hash<litmap::PaperId> {
    std::size_t operator()(litmap::PaperId id) const noexcept {
        return std::hash<std::int64_t>{}(litmap::to_int(id));
    }
};
