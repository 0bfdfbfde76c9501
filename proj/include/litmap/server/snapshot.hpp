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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litmap/core/record_store.hpp"
#include "litmap/embed/aggregate.hpp"
#include "litmap/embed/remote.hpp"
#include "litmap/embed/store.hpp"
#include "litmap/index/flat_index.hpp"
#include "litmap/index/planar_index.hpp"
#include "litmap/projection/projection.hpp"

namespace litmap::server {

/// Embeds free text (title, abstract) with one method. May throw
/// embed::RemoteUnavailable or embed::DimensionMismatch.
using TextEmbedder = std::function<std::vector<double>(std::string_view title, std::string_view abstract)>;

struct MethodIndex {
    embed::Method method = embed::Method::remote;
    std::shared_ptr<const index::FlatIndex> index;
    /// Empty when the method cannot embed new text.
    TextEmbedder text;
};

class SnapshotError : public Error {
   public:
    using Error::Error;
};

/// The immutable state behind the API: records, one flat index per
/// embedding method, and the optional 2-D projection.
class Snapshot {
   public:
    /// Throws SnapshotError unless every index and the projection cover
    /// exactly the record ids. Methods are kept in enum order.
    Snapshot(RecordStore records, std::vector<MethodIndex> methods,
             std::optional<projection::PlanarCoordinates> projection);

    const RecordStore& records() const noexcept { return records_; }
    const std::vector<MethodIndex>& methods() const noexcept { return methods_; }
    const MethodIndex* method(embed::Method method) const noexcept;

    /// Aligned with records() order when present.
    const projection::PlanarCoordinates* projection() const noexcept {
        return projection_ ? &*projection_ : nullptr;
    }
    const index::PlanarIndex* planar_index() const noexcept { return planar_ ? &*planar_ : nullptr; }

   private:
    RecordStore records_;
    std::vector<MethodIndex> methods_;
    std::optional<projection::PlanarCoordinates> projection_;
    std::optional<index::PlanarIndex> planar_;
};

struct RemoteSource {
    /// Exactly one of these is set.
    std::optional<std::string> endpoint;
    std::optional<std::filesystem::path> fixture_dir;
    std::chrono::milliseconds timeout{10000};
    embed::RemoteConfig config;
};

/// Files a snapshot is assembled from.
struct SnapshotSources {
    std::filesystem::path corpus;
    std::map<embed::Method, std::filesystem::path> embeddings;
    std::optional<std::filesystem::path> projection;
    /// Needed to embed text with tfidf or sif; those models are refit on
    /// the corpus at load.
    std::optional<std::filesystem::path> word_vectors;
    embed::EmbedConfig embed;
    std::optional<RemoteSource> remote;
};

/// Embedding rows for papers outside the corpus are dropped with a warning.
std::shared_ptr<const Snapshot> load_snapshot(const SnapshotSources& sources);

/// Word vectors restricted to the tokens of the corpus titles and abstracts.
std::shared_ptr<const embed::WordVectorTable> load_corpus_word_vectors(const std::filesystem::path& path,
                                                                       std::span<const PaperRecord> records);

/// Text embedders fit on a corpus. The returned functions own what they use.
TextEmbedder make_tfidf_embedder(std::span<const PaperRecord> records,
                                 std::shared_ptr<const embed::WordVectorTable> table);
TextEmbedder make_sif_embedder(std::span<const PaperRecord> records,
                               std::shared_ptr<const embed::WordVectorTable> table,
                               const embed::EmbedConfig& config);
TextEmbedder make_remote_embedder(const RemoteSource& source);

std::unique_ptr<embed::EmbeddingBackend> make_backend(const RemoteSource& source);

}  // namespace litmap::server
