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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "litmap/core/types.hpp"

namespace litmap::embed {

/// Lowercased runs of ASCII letters and digits; everything else separates.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens of a paper's title followed by its abstract.
std::vector<std::string> document_tokens(std::string_view title, std::string_view abstract);

class WordVectorError : public Error {
   public:
    using Error::Error;
};

/// Pretrained word vectors, stored as float32 rows.
class WordVectorTable {
   public:
    explicit WordVectorTable(std::size_t dims);

    /// Text format: one "token v1 v2 ... vD" per line. A leading "count dims"
    /// header line is skipped. Tokens are lowercased; the first occurrence
    /// wins. When `vocabulary` is given, other tokens are not kept.
    static WordVectorTable load_text(const std::filesystem::path& path,
                                     const std::unordered_set<std::string>* vocabulary = nullptr);

    /// Throws WordVectorError on a length mismatch or non-finite value.
    void add(std::string_view token, std::span<const double> values);

    /// Row for `token`, or an empty span when absent.
    std::span<const float> find(std::string_view token) const;

    std::size_t dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return index_.size(); }

   private:
    std::size_t dims_;
    std::vector<float> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace litmap::embed
