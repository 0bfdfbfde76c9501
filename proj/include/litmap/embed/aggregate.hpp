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
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/embed/text.hpp"

namespace litmap::embed {

using TokenList = std::vector<std::string>;

/// token -> weight, ordered so that sums run in a fixed order.
using TokenWeights = std::map<std::string, double>;

/// Document frequencies of a corpus.
///
/// weight(t, d) = tf(t, d) * ln(N / df(t)) with raw counts for tf, N the
/// number of documents and df(t) the number of documents containing t.
class TfidfModel {
   public:
    static TfidfModel fit(std::span<const TokenList> corpus);

    std::size_t document_count() const noexcept { return documents_; }

    /// Tokens never seen in the corpus have no idf and are left out.
    TokenWeights weights(const TokenList& tokens) const;

   private:
    std::size_t documents_ = 0;
    std::unordered_map<std::string, std::size_t> document_frequency_;
};

std::vector<TokenWeights> compute_tfidf(std::span<const TokenList> corpus);

struct Embedded {
    std::vector<double> vector;
    /// Set when the result is the zero vector because nothing usable was
    /// found (no token in the table, zero weight sum) or the terms cancel.
    bool flagged = false;
};

/// Weighted mean of the word vectors of the tokens present in the table.
Embedded embed_tfidf(const TokenList& tokens, const TokenWeights& weights, const WordVectorTable& table);

struct EmbedConfig {
    double sif_a = 1e-3;

    void validate() const;
};

EmbedConfig embed_config_from_json(const nlohmann::json& object);

class InsufficientRank : public Error {
   public:
    using Error::Error;
};

/// Smooth-inverse-frequency document embeddings.
///
/// Each document is the mean over its in-table token occurrences of
/// a / (a + p(t)) * v_t, with p(t) the token's relative frequency in the
/// corpus. The first right-singular vector u of the stacked corpus matrix is
/// then projected out of every document vector. u is signed so that its
/// largest-magnitude entry is positive.
class SifModel {
   public:
    /// Fits frequencies and u; when `corpus_vectors` is non-null it receives
    /// the corpus embeddings. Throws InsufficientRank when fewer than two
    /// documents are given or every document vector is zero.
    static SifModel fit(std::span<const TokenList> corpus, const WordVectorTable& table,
                        const EmbedConfig& config, std::vector<Embedded>* corpus_vectors = nullptr);

    /// Embeds a new text with the fitted frequencies and component.
    Embedded embed(const TokenList& tokens) const;

    const std::vector<double>& component() const noexcept { return component_; }

   private:
    SifModel(const WordVectorTable& table, double a) : table_(&table), a_(a) {}

    Embedded weighted_mean(const TokenList& tokens) const;
    void remove_component(std::vector<double>& v) const;

    const WordVectorTable* table_;
    double a_;
    std::unordered_map<std::string, double> probability_;
    std::vector<double> component_;
};

std::vector<Embedded> embed_corpus_sif(std::span<const TokenList> corpus, const WordVectorTable& table,
                                       const EmbedConfig& config);

}  // namespace litmap::embed
