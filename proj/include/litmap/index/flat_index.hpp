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

#include <span>
#include <unordered_map>
#include <vector>

#include "litmap/embed/store.hpp"
#include "litmap/index/neighbor_index.hpp"

namespace litmap::index {

/// Brute-force scan over row-major float32 vectors.
class FlatIndex final : public NeighborIndex {
   public:
    /// Throws EmptyCorpus, DimensionMismatch, DuplicateId, or
    /// std::invalid_argument on a non-finite value.
    static FlatIndex build(std::span<const PaperId> ids, std::span<const std::vector<double>> vectors);
    static FlatIndex build(embed::EmbeddingSet embeddings);

    std::size_t dims() const noexcept override { return dims_; }
    std::size_t size() const noexcept override { return ids_.size(); }
    bool contains(PaperId id) const override { return rows_.contains(id); }
    std::optional<std::vector<double>> vector(PaperId id) const override;
    std::vector<SimilarityResult> knn(std::span<const double> query, std::size_t k,
                                      const IdSet& exclude = {}) const override;

    std::span<const PaperId> ids() const noexcept { return ids_; }
    std::span<const float> row(std::size_t i) const { return {data_.data() + i * dims_, dims_}; }

   private:
    FlatIndex() = default;
    void finish();

    std::size_t dims_ = 0;
    std::vector<PaperId> ids_;
    std::vector<float> data_;
    std::unordered_map<PaperId, std::size_t> rows_;
};

}  // namespace litmap::index
