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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "litmap/embed/aggregate.hpp"
#include "litmap/simd/kernels.hpp"

namespace litmap::embed {
namespace {

// Flip so the largest-magnitude entry (first one on ties) is positive.
void fix_sign(std::vector<double>& u) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (std::abs(u[i]) > std::abs(u[best])) {
            best = i;
        }
    }
    if (u[best] < 0.0) {
        for (auto& x : u) {
            x = -x;
        }
    }
}

double norm(const std::vector<double>& v) { return std::sqrt(simd::dot(v, v)); }

}  // namespace

Embedded SifModel::weighted_mean(const TokenList& tokens) const {
    Embedded out{std::vector<double>(table_->dims(), 0.0), false};
    std::size_t used = 0;
    for (const auto& token : tokens) {
        const auto row = table_->find(token);
        if (row.empty()) {
            continue;
        }
        const auto p = probability_.find(token);
        const double prob = p == probability_.end() ? 0.0 : p->second;
        simd::axpy(a_ / (a_ + prob), row, out.vector);
        ++used;
    }
    if (used == 0) {
        out.flagged = true;
        return out;
    }
    for (auto& v : out.vector) {
        v /= static_cast<double>(used);
    }
    return out;
}

void SifModel::remove_component(std::vector<double>& v) const {
    const double before = norm(v);
    if (before == 0.0) {
        return;
    }
    for (int pass = 0; pass < 2; ++pass) {
        simd::axpy(-simd::dot(component_, v), component_, v);
    }
    if (norm(v) <= 1e-12 * before) {
        std::fill(v.begin(), v.end(), 0.0);
    }
}

SifModel SifModel::fit(std::span<const TokenList> corpus, const WordVectorTable& table, const EmbedConfig& config,
                       std::vector<Embedded>* corpus_vectors) {
    config.validate();
    if (corpus.size() < 2) {
        throw InsufficientRank("SIF needs at least two documents");
    }
    SifModel model(table, config.sif_a);

    std::size_t total = 0;
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& doc : corpus) {
        for (const auto& token : doc) {
            ++counts[token];
        }
        total += doc.size();
    }
    for (const auto& [token, count] : counts) {
        model.probability_.emplace(token, static_cast<double>(count) / static_cast<double>(total));
    }

    std::vector<Embedded> vectors;
    vectors.reserve(corpus.size());
    for (const auto& doc : corpus) {
        vectors.push_back(model.weighted_mean(doc));
    }

    const auto dims = static_cast<Eigen::Index>(table.dims());
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(vectors.size()), dims);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        stacked.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(vectors[i].vector.data(), dims);
    }
    if (stacked.isZero(0.0)) {
        throw InsufficientRank("SIF: every document vector is zero");
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dims, dims);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(stacked.transpose());
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

    // Top eigenvector of X^T X is the first right-singular vector of X.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw InsufficientRank("SIF: eigen decomposition failed");
    }
    const Eigen::VectorXd top = solver.eigenvectors().col(dims - 1).normalized();
    model.component_.assign(top.data(), top.data() + dims);
    fix_sign(model.component_);

    if (corpus_vectors != nullptr) {
        for (auto& e : vectors) {
            model.remove_component(e.vector);
            if (std::all_of(e.vector.begin(), e.vector.end(), [](double x) { return x == 0.0; })) {
                e.flagged = true;
            }
        }
        *corpus_vectors = std::move(vectors);
    }
    return model;
}

Embedded SifModel::embed(const TokenList& tokens) const {
    Embedded out = weighted_mean(tokens);
    remove_component(out.vector);
    return out;
}

std::vector<Embedded> embed_corpus_sif(std::span<const TokenList> corpus, const WordVectorTable& table,
                                       const EmbedConfig& config) {
    std::vector<Embedded> out;
    SifModel::fit(corpus, table, config, &out);
    return out;
}

}  // namespace litmap::embed
