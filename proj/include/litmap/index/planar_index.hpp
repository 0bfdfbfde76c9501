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
#include <unordered_map>
#include <vector>

#include "litmap/index/neighbor_index.hpp"
#include "litmap/projection/projection.hpp"

namespace litmap::index {

/// Balanced 2-D tree over projected coordinates.
class PlanarIndex final : public NeighborIndex {
   public:
    /// Throws EmptyCorpus, DuplicateId, or std::invalid_argument on a
    /// non-finite coordinate.
    static PlanarIndex build(const projection::PlanarCoordinates& coords);

    std::size_t dims() const noexcept override { return 2; }
    std::size_t size() const noexcept override { return nodes_.size(); }
    bool contains(PaperId id) const override { return slot_.contains(id); }
    std::optional<std::vector<double>> vector(PaperId id) const override;
    std::vector<SimilarityResult> knn(std::span<const double> query, std::size_t k,
                                      const IdSet& exclude = {}) const override;

    /// Depth of the deepest leaf; ceil(log2(n + 1)) for a balanced tree.
    std::size_t depth() const noexcept { return depth_; }

   private:
    struct Node {
        projection::Point point;
        PaperId id;
        std::uint8_t axis;
    };

    PlanarIndex() = default;
    std::size_t build_range(std::size_t lo, std::size_t hi, std::size_t level);

    // Implicit tree: the node of range [lo, hi) sits at its midpoint.
    std::vector<Node> nodes_;
    std::unordered_map<PaperId, std::size_t> slot_;
    std::size_t depth_ = 0;
};

}  // namespace litmap::index
