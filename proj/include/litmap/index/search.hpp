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
#include <vector>

#include "litmap/index/neighbor_index.hpp"

namespace litmap::index {

class EmptySeedSet : public Error {
   public:
    EmptySeedSet() : Error("seed set is empty") {}
};

class UnknownSeedId : public Error {
   public:
    explicit UnknownSeedId(PaperId id)
        : Error("seed paper " + std::to_string(to_int(id)) + " is not in the index"), id_(id) {}
    PaperId id() const noexcept { return id_; }

   private:
    PaperId id_;
};

/// 1 / (1 + d): 1 at distance 0, strictly decreasing, never reaching 0.
double score_from_distance(double distance) noexcept;

/// Component-wise arithmetic mean. Throws EmptySeedSet or DimensionMismatch.
std::vector<double> centroid(std::span<const std::vector<double>> vectors);

/// knn around the centroid of the seeds, excluding the seeds. Duplicate seed
/// ids count once. Throws EmptySeedSet or UnknownSeedId.
std::vector<SimilarityResult> search_by_seeds(const NeighborIndex& index, std::span<const PaperId> seed_ids,
                                              std::size_t k);

namespace detail {

/// Bounded selection of the k best (distance, id) pairs.
class TopK {
   public:
    explicit TopK(std::size_t k) : k_(k) { heap_.reserve(k + 1); }

    bool full() const noexcept { return heap_.size() == k_; }
    /// Distance of the current worst kept entry; only meaningful when full.
    double worst() const noexcept { return heap_.front().distance; }
    /// Whether (distance, id) would be kept.
    bool admits(double distance, PaperId id) const noexcept;
    void push(double distance, PaperId id);
    /// Sorted results with scores filled in.
    std::vector<SimilarityResult> take();

   private:
    std::size_t k_;
    std::vector<SimilarityResult> heap_;
};

}  // namespace detail

}  // namespace litmap::index
