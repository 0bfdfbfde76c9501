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

#include "litmap/index/planar_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "litmap/index/search.hpp"

namespace litmap::index {
namespace {

double coord(const projection::Point& p, int axis) noexcept { return axis == 0 ? p.x : p.y; }

double planar_distance(const projection::Point& p, double qx, double qy) noexcept {
    const double dx = qx - p.x;
    const double dy = qy - p.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

PlanarIndex PlanarIndex::build(const projection::PlanarCoordinates& coords) {
    if (coords.ids.size() != coords.points.size()) {
        throw std::invalid_argument("planar id count does not match point count");
    }
    if (coords.ids.empty()) {
        throw EmptyCorpus();
    }
    PlanarIndex index;
    index.nodes_.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto& p = coords.points[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("planar input holds a non-finite value");
        }
        index.nodes_.push_back({p, coords.ids[i], 0});
    }
    index.depth_ = index.build_range(0, index.nodes_.size(), 0);
    index.slot_.reserve(index.nodes_.size());
    for (std::size_t i = 0; i < index.nodes_.size(); ++i) {
        if (!index.slot_.emplace(index.nodes_[i].id, i).second) {
            throw DuplicateId(index.nodes_[i].id);
        }
    }
    return index;
}

std::size_t PlanarIndex::build_range(std::size_t lo, std::size_t hi, std::size_t level) {
    if (lo >= hi) {
        return level;
    }
    const int axis = static_cast<int>(level % 2);
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto begin = nodes_.begin();
    std::nth_element(begin + static_cast<std::ptrdiff_t>(lo), begin + static_cast<std::ptrdiff_t>(mid),
                     begin + static_cast<std::ptrdiff_t>(hi), [axis](const Node& a, const Node& b) {
                         const double ka = coord(a.point, axis);
                         const double kb = coord(b.point, axis);
                         if (ka != kb) {
                             return ka < kb;
                         }
                         const double oa = coord(a.point, 1 - axis);
                         const double ob = coord(b.point, 1 - axis);
                         if (oa != ob) {
                             return oa < ob;
                         }
                         return a.id < b.id;
                     });
    nodes_[mid].axis = static_cast<std::uint8_t>(axis);
    const std::size_t left = build_range(lo, mid, level + 1);
    const std::size_t right = build_range(mid + 1, hi, level + 1);
    return std::max(left, right);
}

std::optional<std::vector<double>> PlanarIndex::vector(PaperId id) const {
    const auto it = slot_.find(id);
    if (it == slot_.end()) {
        return std::nullopt;
    }
    const auto& p = nodes_[it->second].point;
    return std::vector<double>{p.x, p.y};
}

std::vector<SimilarityResult> PlanarIndex::knn(std::span<const double> query, std::size_t k,
                                               const IdSet& exclude) const {
    if (query.size() != 2) {
        throw DimensionMismatch(2, query.size());
    }
    if (k == 0) {
        throw InvalidQuery("k must be at least 1");
    }
    const double qx = query[0];
    const double qy = query[1];
    if (!std::isfinite(qx) || !std::isfinite(qy)) {
        throw InvalidQuery("query holds a non-finite value");
    }
    detail::TopK top(k);

    struct Frame {
        std::size_t lo;
        std::size_t hi;
    };
    auto visit = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
        if (lo >= hi) {
            return;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        const Node& node = nodes_[mid];
        if (exclude.empty() || !exclude.contains(node.id)) {
            const double d = planar_distance(node.point, qx, qy);
            if (top.admits(d, node.id)) {
                top.push(d, node.id);
            }
        }
        const double diff = (node.axis == 0 ? qx : qy) - coord(node.point, node.axis);
        const Frame near = diff < 0 ? Frame{lo, mid} : Frame{mid + 1, hi};
        const Frame far = diff < 0 ? Frame{mid + 1, hi} : Frame{lo, mid};
        self(self, near.lo, near.hi);
        if (!top.full() || std::abs(diff) <= top.worst()) {
            self(self, far.lo, far.hi);
        }
    };
    visit(visit, 0, nodes_.size());
    return top.take();
}

}  // namespace litmap::index
