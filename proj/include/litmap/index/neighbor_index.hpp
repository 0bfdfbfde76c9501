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
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "litmap/core/types.hpp"

namespace litmap::index {

struct SimilarityResult {
    PaperId paper_id{};
    double distance = 0.0;
    double score = 1.0;

    bool operator==(const SimilarityResult&) const = default;
};

class DimensionMismatch : public Error {
   public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("vector has " + std::to_string(got) + " dims, index has " + std::to_string(expected)) {}
};

class EmptyCorpus : public Error {
   public:
    EmptyCorpus() : Error("cannot build an index over zero vectors") {}
};

class DuplicateId : public Error {
   public:
    explicit DuplicateId(PaperId id) : Error("paper id " + std::to_string(to_int(id)) + " indexed twice") {}
};

class InvalidQuery : public Error {
   public:
    using Error::Error;
};

using IdSet = std::unordered_set<PaperId>;

/// Exact nearest-neighbor search. Implementations are immutable after
/// construction and safe for concurrent readers.
class NeighborIndex {
   public:
    virtual ~NeighborIndex() = default;

    virtual std::size_t dims() const noexcept = 0;
    virtual std::size_t size() const noexcept = 0;
    virtual bool contains(PaperId id) const = 0;
    /// The stored vector for `id`, widened to double.
    virtual std::optional<std::vector<double>> vector(PaperId id) const = 0;

    /// The k nearest stored vectors not in `exclude`, ordered by
    /// (distance asc, id asc). k must be >= 1; it is clamped to the number
    /// of candidates. Throws DimensionMismatch or InvalidQuery.
    virtual std::vector<SimilarityResult> knn(std::span<const double> query, std::size_t k,
                                              const IdSet& exclude = {}) const = 0;
};

}  // namespace litmap::index
