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

#include "litmap/index/flat_index.hpp"

#include <cmath>
#include <stdexcept>

#include "litmap/index/search.hpp"
#include "litmap/simd/kernels.hpp"

namespace litmap::index {

FlatIndex FlatIndex::build(std::span<const PaperId> ids, std::span<const std::vector<double>> vectors) {
    if (ids.size() != vectors.size()) {
        throw std::invalid_argument("id count does not match vector count");
    }
    if (vectors.empty()) {
        throw EmptyCorpus();
    }
    FlatIndex index;
    index.dims_ = vectors.front().size();
    index.ids_.assign(ids.begin(), ids.end());
    index.data_.reserve(vectors.size() * index.dims_);
    for (const auto& v : vectors) {
        if (v.size() != index.dims_) {
            throw DimensionMismatch(index.dims_, v.size());
        }
        for (double x : v) {
            index.data_.push_back(static_cast<float>(x));
        }
    }
    index.finish();
    return index;
}

FlatIndex FlatIndex::build(embed::EmbeddingSet embeddings) {
    if (embeddings.size() == 0) {
        throw EmptyCorpus();
    }
    if (embeddings.data.size() != embeddings.size() * embeddings.dims) {
        throw DimensionMismatch(embeddings.dims, embeddings.data.size() / embeddings.size());
    }
    FlatIndex index;
    index.dims_ = embeddings.dims;
    index.ids_ = std::move(embeddings.ids);
    index.data_ = std::move(embeddings.data);
    index.finish();
    return index;
}

void FlatIndex::finish() {
    if (dims_ == 0) {
        throw DimensionMismatch(1, 0);
    }
    for (float x : data_) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("index input holds a non-finite value");
        }
    }
    rows_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!rows_.emplace(ids_[i], i).second) {
            throw DuplicateId(ids_[i]);
        }
    }
}

std::optional<std::vector<double>> FlatIndex::vector(PaperId id) const {
    const auto it = rows_.find(id);
    if (it == rows_.end()) {
        return std::nullopt;
    }
    const auto r = row(it->second);
    return std::vector<double>(r.begin(), r.end());
}

std::vector<SimilarityResult> FlatIndex::knn(std::span<const double> query, std::size_t k,
                                             const IdSet& exclude) const {
    if (query.size() != dims_) {
        throw DimensionMismatch(dims_, query.size());
    }
    if (k == 0) {
        throw InvalidQuery("k must be at least 1");
    }
    for (double x : query) {
        if (!std::isfinite(x)) {
            throw InvalidQuery("query holds a non-finite value");
        }
    }
    const auto& kernels = simd::active();
    detail::TopK top(k);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!exclude.empty() && exclude.contains(ids_[i])) {
            continue;
        }
        const double d = std::sqrt(kernels.l2_squared_mixed(data_.data() + i * dims_, query.data(), dims_));
        if (top.admits(d, ids_[i])) {
            top.push(d, ids_[i]);
        }
    }
    return top.take();
}

}  // namespace litmap::index
