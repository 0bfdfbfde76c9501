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

#include "litmap/index/search.hpp"

#include <algorithm>
#include <unordered_set>

#include "litmap/simd/kernels.hpp"

namespace litmap::index {
namespace {

bool ordered(const SimilarityResult& a, const SimilarityResult& b) noexcept {
    if (a.distance != b.distance) {
        return a.distance < b.distance;
    }
    return a.paper_id < b.paper_id;
}

}  // namespace

double score_from_distance(double distance) noexcept { return 1.0 / (1.0 + distance); }

std::vector<double> centroid(std::span<const std::vector<double>> vectors) {
    if (vectors.empty()) {
        throw EmptySeedSet();
    }
    const std::size_t dims = vectors.front().size();
    std::vector<double> mean(dims, 0.0);
    for (const auto& v : vectors) {
        if (v.size() != dims) {
            throw DimensionMismatch(dims, v.size());
        }
        simd::axpy(1.0, std::span<const double>(v), std::span<double>(mean));
    }
    const double n = static_cast<double>(vectors.size());
    for (double& x : mean) {
        x /= n;
    }
    return mean;
}

std::vector<SimilarityResult> search_by_seeds(const NeighborIndex& index, std::span<const PaperId> seed_ids,
                                              std::size_t k) {
    if (seed_ids.empty()) {
        throw EmptySeedSet();
    }
    IdSet exclude;
    std::vector<std::vector<double>> vectors;
    for (PaperId id : seed_ids) {
        if (!exclude.insert(id).second) {
            continue;
        }
        auto v = index.vector(id);
        if (!v) {
            throw UnknownSeedId(id);
        }
        vectors.push_back(std::move(*v));
    }
    return index.knn(centroid(vectors), k, exclude);
}

namespace detail {

bool TopK::admits(double distance, PaperId id) const noexcept {
    if (k_ == 0) {
        return false;
    }
    return !full() || ordered({id, distance, 0.0}, heap_.front());
}

void TopK::push(double distance, PaperId id) {
    if (full()) {
        std::pop_heap(heap_.begin(), heap_.end(), ordered);
        heap_.pop_back();
    }
    heap_.push_back({id, distance, 0.0});
    std::push_heap(heap_.begin(), heap_.end(), ordered);
}

std::vector<SimilarityResult> TopK::take() {
    std::sort_heap(heap_.begin(), heap_.end(), ordered);
    for (auto& r : heap_) {
        r.score = score_from_distance(r.distance);
    }
    return std::move(heap_);
}

}  // namespace detail

}  // namespace litmap::index
