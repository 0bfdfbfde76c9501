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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litmap/core/types.hpp"

namespace litmap::embed {

enum class Method { tfidf, sif, remote };

std::string_view method_name(Method method) noexcept;
/// Throws std::invalid_argument for an unknown tag.
Method parse_method(std::string_view name);

/// Document embeddings of one method, row-major float32.
struct EmbeddingSet {
    Method method = Method::remote;
    std::size_t dims = 0;
    std::vector<PaperId> ids;
    std::vector<float> data;

    std::size_t size() const noexcept { return ids.size(); }
    std::span<const float> row(std::size_t i) const { return {data.data() + i * dims, dims}; }

    /// Appends a row; throws std::invalid_argument on a dims mismatch or a
    /// non-finite value.
    void add(PaperId id, std::span<const double> vector);
    void add(PaperId id, std::span<const float> vector);
};

class CorruptHeader : public Error {
   public:
    using Error::Error;
};

class CountMismatch : public Error {
   public:
    CountMismatch(std::uint64_t declared, std::uint64_t present)
        : Error("embedding file declares " + std::to_string(declared) + " vectors but holds " +
                std::to_string(present)),
          declared_(declared),
          present_(present) {}
    std::uint64_t declared() const noexcept { return declared_; }
    std::uint64_t present() const noexcept { return present_; }

   private:
    std::uint64_t declared_;
    std::uint64_t present_;
};

/// Binary layout, little-endian:
///
///   offset  size  field
///   0       8     magic "LMEMBED1"
///   8       4     dtype (1 = IEEE-754 float32)
///   12      4     dims
///   16      8     count
///   24      16    method tag, NUL-padded ASCII ("tfidf", "sif", "remote")
///   40      ...   count records of: int64 paper id, dims x float32
std::string serialize_embeddings(const EmbeddingSet& set);
EmbeddingSet deserialize_embeddings(std::string_view bytes);

void store_embeddings(const std::filesystem::path& path, const EmbeddingSet& set);
EmbeddingSet load_embeddings(const std::filesystem::path& path);

}  // namespace litmap::embed
