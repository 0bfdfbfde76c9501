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

#include <algorithm>
#include <cmath>
#include <set>

#include "litmap/embed/aggregate.hpp"
#include "litmap/simd/kernels.hpp"

namespace litmap::embed {

TfidfModel TfidfModel::fit(std::span<const TokenList> corpus) {
    TfidfModel model;
    model.documents_ = corpus.size();
    for (const auto& doc : corpus) {
        const std::set<std::string> distinct(doc.begin(), doc.end());
        for (const auto& token : distinct) {
            ++model.document_frequency_[token];
        }
    }
    return model;
}

TokenWeights TfidfModel::weights(const TokenList& tokens) const {
    TokenWeights counts;
    for (const auto& token : tokens) {
        counts[token] += 1.0;
    }
    TokenWeights out;
    for (const auto& [token, tf] : counts) {
        auto it = document_frequency_.find(token);
        if (it == document_frequency_.end()) {
            continue;
        }
        const double idf = std::log(static_cast<double>(documents_) / static_cast<double>(it->second));
        out.emplace(token, tf * idf);
    }
    return out;
}

std::vector<TokenWeights> compute_tfidf(std::span<const TokenList> corpus) {
    const auto model = TfidfModel::fit(corpus);
    std::vector<TokenWeights> out;
    out.reserve(corpus.size());
    for (const auto& doc : corpus) {
        out.push_back(model.weights(doc));
    }
    return out;
}

Embedded embed_tfidf(const TokenList& tokens, const TokenWeights& weights, const WordVectorTable& table) {
    Embedded out{std::vector<double>(table.dims(), 0.0), false};
    const std::set<std::string> distinct(tokens.begin(), tokens.end());
    double weight_sum = 0.0;
    bool any_in_table = false;
    for (const auto& token : distinct) {
        const auto row = table.find(token);
        if (row.empty()) {
            continue;
        }
        any_in_table = true;
        const auto w = weights.find(token);
        const double weight = w == weights.end() ? 0.0 : w->second;
        if (weight == 0.0) {
            continue;
        }
        simd::axpy(weight, row, out.vector);
        weight_sum += weight;
    }
    if (!any_in_table || weight_sum == 0.0) {
        std::fill(out.vector.begin(), out.vector.end(), 0.0);
        out.flagged = true;
        return out;
    }
    for (auto& v : out.vector) {
        v /= weight_sum;
    }
    out.flagged = std::all_of(out.vector.begin(), out.vector.end(), [](double v) { return v == 0.0; });
    return out;
}

void EmbedConfig::validate() const {
    if (!(sif_a > 0.0) || !std::isfinite(sif_a)) {
        throw std::invalid_argument("embed: sif_a must be > 0");
    }
}

EmbedConfig embed_config_from_json(const nlohmann::json& object) {
    EmbedConfig config;
    config.sif_a = object.value("sif_a", config.sif_a);
    config.validate();
    return config;
}

}  // namespace litmap::embed
